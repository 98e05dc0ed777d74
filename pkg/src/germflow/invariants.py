"""Classical invariants of a branch and the equisingularity decision.

The multiplicity sequence, semigroup, delta and Milnor number are computed
here from the characteristic exponents alone (Euclidean-division
bookkeeping), which gives an oracle that is fully independent of the blowup
engine; equisingularity itself is decided on weighted dual graphs under the
canonical blowup-order labeling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .branch import Branch
from .errors import SeriesError
from .resolution import DualGraph, ResolutionData, dual_graph, resolve

DEFAULT_PRECISION = 64


@dataclass(frozen=True)
class CharExponents:
    n: int
    betas: tuple[int, ...]


@dataclass(frozen=True)
class InvariantSet:
    mult_seq: tuple[int, ...]
    semigroup_gens: tuple[int, ...]
    delta: int
    milnor: int


@dataclass(frozen=True)
class EquisingularityVerdict:
    equal: bool
    certificate: str


def char_exponents(b: Branch) -> CharExponents:
    """Support exponents of y(t) at which the running gcd with n drops."""
    if not b.monomial_x():
        raise SeriesError("characteristic exponents need x to be the monomial t^n")
    n = b.n
    betas = []
    e = n
    for exp in b.ys.support():
        g = math.gcd(e, exp)
        if g < e:
            betas.append(exp)
            e = g
    return CharExponents(n, tuple(betas))


def _euclid_run(a: int, b: int) -> list[int]:
    """Quotient-copies multiplicity block of the Euclidean algorithm on {a, b}."""
    x, y = max(a, b), min(a, b)
    out = []
    while y > 0:
        q, r = divmod(x, y)
        out.extend([y] * q)
        x, y = y, r
    return out


def mult_seq_from_char(c: CharExponents) -> tuple[int, ...]:
    """Multiplicity sequence by iterated Euclidean division on the
    characteristic data; independent of the blowup engine."""
    if not c.betas:
        return (1,)
    seq = _euclid_run(c.n, c.betas[0])
    e = math.gcd(c.n, c.betas[0])
    for prev, beta in zip(c.betas, c.betas[1:]):
        seq.extend(_euclid_run(e, beta - prev))
        e = math.gcd(e, beta - prev)
    return tuple(seq)


def semigroup(c: CharExponents) -> tuple[int, ...]:
    """Minimal generators of the value semigroup via the standard recursion
    b0 = n, b1 = beta1, b_{i+1} = (e_{i-1}/e_i) b_i + beta_{i+1} - beta_i."""
    if not c.betas:
        return (1,)
    gens = [c.n, c.betas[0]]
    e_prev = c.n
    e = math.gcd(c.n, c.betas[0])
    for prev, beta in zip(c.betas, c.betas[1:]):
        gens.append((e_prev // e) * gens[-1] + beta - prev)
        e_prev = e
        e = math.gcd(e, beta - prev)
    return tuple(sorted(gens))


def delta_from_mult(seq) -> int:
    return sum(m * (m - 1) // 2 for m in seq)


def delta_mu(rd: ResolutionData) -> tuple[int, int]:
    d = delta_from_mult(rd.multiplicities())
    return d, 2 * d


def invariant_set(b: Branch) -> InvariantSet:
    c = char_exponents(b)
    seq = mult_seq_from_char(c)
    d = delta_from_mult(seq)
    return InvariantSet(seq, semigroup(c), d, 2 * d)


def semigroup_elements(gens, bound: int) -> set[int]:
    """All semigroup elements below bound (test/report helper)."""
    reached = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = v + g
            if w < bound and w not in reached:
                reached.add(w)
                frontier.append(w)
    return reached


def compare_dual_graphs(g1: DualGraph, g2: DualGraph) -> EquisingularityVerdict:
    r1, r2 = len(g1.vertices), len(g2.vertices)
    if r1 != r2:
        return EquisingularityVerdict(False, f"r differs ({r1} vs {r2})")
    for (i, w1), (_, w2) in zip(g1.vertices, g2.vertices):
        if w1 != w2:
            return EquisingularityVerdict(False, f"weights differ (E{i}: {w1} vs {w2})")
    if g1.edges != g2.edges:
        only1 = sorted(set(g1.edges) - set(g2.edges))
        only2 = sorted(set(g2.edges) - set(g1.edges))
        detail = []
        if only1:
            detail.append(f"E{only1[0][0]}--E{only1[0][1]} only in first")
        if only2:
            detail.append(f"E{only2[0][0]}--E{only2[0][1]} only in second")
        return EquisingularityVerdict(False, "edges differ (" + "; ".join(detail) + ")")
    if g1.arrow != g2.arrow:
        return EquisingularityVerdict(False, f"arrow differs (E{g1.arrow} vs E{g2.arrow})")
    return EquisingularityVerdict(True, "dual graphs identical under blowup-order labeling")


def equisingular(a: Branch, b: Branch, precision: int = DEFAULT_PRECISION,
                 max_steps: int = 64) -> EquisingularityVerdict:
    """Compare the weighted dual graphs of the two desingularisations."""
    ga = dual_graph(resolve(a.with_precision(precision) if a.exact else a, max_steps))
    gb = dual_graph(resolve(b.with_precision(precision) if b.exact else b, max_steps))
    return compare_dual_graphs(ga, gb)
