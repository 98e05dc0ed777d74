import pytest

from germflow import implicitize, newton_puiseux, parse_branch, parse_poly, poly_on_branch
from germflow.branch import normalize_branch
from germflow.errors import IrrationalRootError, PrecisionError, ReducibleError


def same_up_to_t_sign(a, b) -> bool:
    for cand in (b, b.flip()):
        if a.xs.terms == cand.xs.terms and a.ys.terms == cand.ys.terms:
            return True
    return False


def test_cusp_expansion():
    b = newton_puiseux(parse_poly("f = y^2 - x^3"), n_max=8, precision=32)
    assert b.xs.as_dict() == {2: 1}
    assert b.ys.as_dict() == {3: 1}


def test_smooth_graph():
    b = newton_puiseux(parse_poly("f = y - x"), n_max=8, precision=32)
    assert b.xs.as_dict() == {1: 1}
    assert b.ys.as_dict() == {1: 1}


def test_irrational_root_refused():
    with pytest.raises(IrrationalRootError):
        newton_puiseux(parse_poly("f = y^2 - 2*x^3"))


def test_irrational_qth_power_refused():
    # edge equation C = 2 needs c = sqrt(2) because q = 2
    with pytest.raises(IrrationalRootError):
        newton_puiseux(parse_poly("f = y^2 - 2*x^5"))


def test_node_is_reducible():
    with pytest.raises(ReducibleError):
        newton_puiseux(parse_poly("f = y^2 - 3*x y + 2*x^2"))


def test_two_edges_reducible():
    f = parse_poly("f = y^3 - x y + x^4")  # polygon breaks into two edges
    with pytest.raises(ReducibleError):
        newton_puiseux(f)


def test_x_factor_refused():
    with pytest.raises(ReducibleError):
        newton_puiseux(parse_poly("f = x y - x^2"))


def test_square_factor_detected():
    with pytest.raises(ReducibleError):
        newton_puiseux(parse_poly("f = y^2 - 2*x^2y + x^4"), precision=16)


def test_double_branch_needs_precision():
    # (y - x^2)^2 - x^51: the two sheets only separate at order 51/2
    with pytest.raises(PrecisionError):
        newton_puiseux(parse_poly("f = y^2 - 2*x^2y + x^4 - x^51"), precision=16)


def test_residual_vanishes_mod_precision():
    f = parse_poly("f = y^2 - x^3")
    b = newton_puiseux(f, precision=48)
    res = poly_on_branch(f, b.with_precision(48) if b.exact else b)
    assert res.is_zero()


@pytest.mark.parametrize("name", ["cusp", "cusp_t4", "cusp_2t3", "e25", "e25_shift",
                                  "two_pair", "e34", "e35", "diag", "parabola"])
def test_roundtrip_through_implicitization(name, corpus):
    b = corpus[name]
    back = newton_puiseux(implicitize(b), n_max=16, precision=64)
    assert same_up_to_t_sign(normalize_branch(b), normalize_branch(back))


def test_roundtrip_swapped_axes():
    b = parse_branch("x = t^3\ny = t^2").with_precision(64)
    back = newton_puiseux(implicitize(b), n_max=16, precision=64)
    assert same_up_to_t_sign(b, back)
