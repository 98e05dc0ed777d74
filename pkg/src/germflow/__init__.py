"""Plane branch germs: exact resolution, equisingularity and verified isotopies."""

from .branch import Branch, eval_branch, normalize_branch, parse_branch, parse_branch_file
from .bivar import BivarPoly, implicitize, parse_poly, poly_on_branch, poly_to_text
from .invariants import (CharExponents, EquisingularityVerdict, InvariantSet,
                         char_exponents, delta_mu, equisingular, invariant_set,
                         mult_seq_from_char, semigroup)
from .isotopy import (BumpSpec, FieldSpec, FlowReport, IsotopyPlan, apply_plan,
                      build_plan, bump_value, graph_match_field, integrate_flow,
                      lift_point, multiplicative_field, pushdown_point,
                      verify_isotopy)
from .puiseux import newton_puiseux
from .resolution import (ChartState, DualGraph, ResolutionData, StepRecord,
                         blowup_step, dual_graph, proximity_matrix, resolve)
from .series import TruncatedSeries

__version__ = "0.1.0"
