from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from germflow.errors import PrecisionError, SeriesError
from germflow.series import TruncatedSeries


def S(terms, precision):
    return TruncatedSeries.from_terms({e: Fraction(c) for e, c in terms.items()}, precision)


small_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=8)


@st.composite
def series(draw, min_order=0, max_terms=8, precision=16):
    n = draw(st.integers(0, max_terms))
    exps = draw(st.lists(st.integers(min_order, precision - 1), min_size=n, max_size=n,
                         unique=True))
    coeffs = draw(st.lists(small_fractions.filter(lambda f: f != 0),
                           min_size=n, max_size=n))
    return S(dict(zip(exps, coeffs)), precision)


def test_order_and_zero():
    assert S({2: 1, 5: -3}, 8).order() == 2
    assert S({}, 8).order() is None
    assert S({}, 8).is_zero()


def test_stored_terms_respect_precision():
    s = S({2: 1, 9: 4}, 5)
    assert s.support() == (2,)
    assert s.precision == 5


def test_divide_monomials():
    q = S({3: 1}, 6).divide(S({2: 1}, 6))
    assert q.as_dict() == {1: Fraction(1)}


def test_divide_shift():
    q = S({3: 1, 4: 1}, 8).divide(S({2: 1}, 8))
    assert q.as_dict() == {1: Fraction(1), 2: Fraction(1)}


def test_divide_unit_expansion():
    # t^2 / (t^2 + t^3) = 1 - t + t^2 - ...
    q = S({2: 1}, 8).divide(S({2: 1, 3: 1}, 8))
    assert q.coefficient(0) == 1
    assert q.coefficient(1) == -1
    assert q.coefficient(2) == 1


def test_divide_order_error():
    with pytest.raises(SeriesError):
        S({1: 1}, 6).divide(S({2: 1}, 6))


def test_divide_by_invisible_divisor():
    with pytest.raises(PrecisionError):
        S({1: 1}, 6).divide(S({}, 6))


def test_divide_precision_contract():
    # precision of q = min(T_a, T_b + ord a - ord b) - ord b
    q = S({3: 1}, 7).divide(S({2: 1}, 5))
    assert q.precision == min(7, 5 + 3 - 2) - 2


@given(series(max_terms=6), series(min_order=0, max_terms=6))
def test_divide_multiply_back(a, b):
    oa = a.precision if a.order() is None else a.order()
    if b.order() is None or oa < b.order():
        return
    try:
        q = a.divide(b)
    except PrecisionError:
        return
    residual = a.sub(b.mul(q))
    assert residual.order() is None or residual.order() >= q.precision + b.order()


@given(series(max_terms=5), series(max_terms=5))
def test_mul_commutes(a, b):
    assert a.mul(b) == b.mul(a)


def test_eval_horner():
    s = S({2: 1}, 8)
    assert s.eval(0.1) == pytest.approx(0.01)
    y = S({3: 1, 5: Fraction(1, 2)}, 8)
    assert y.eval(0.1) == pytest.approx(0.001005)


@given(series(max_terms=6), st.complex_numbers(max_magnitude=2.0, allow_nan=False,
                                               allow_infinity=False))
def test_eval_conjugation(s, t):
    # real rational coefficients: evaluation commutes with conjugation
    left = s.eval(t.conjugate())
    right = s.eval(t).conjugate()
    assert abs(left - right) <= 1e-9 * (1.0 + abs(right))


def test_invert_unit():
    u = S({0: 1, 1: 1}, 6)
    inv = u.invert_unit(6)
    prod = u.mul(inv)
    assert prod.coefficient(0) == 1
    assert all(prod.coefficient(k) == 0 for k in range(1, 5))


def test_compose_hand_example():
    outer = S({0: 2, 1: 3, 2: 1}, 5)
    inner = S({1: 1, 2: 1}, 5)
    expected = {0: Fraction(2), 1: Fraction(3), 2: Fraction(4), 3: Fraction(2),
                4: Fraction(1)}
    got = outer.compose(inner)
    assert {e: c for e, c in got.terms} == {e: c for e, c in expected.items()
                                            if e < got.precision}


def test_compose_requires_positive_inner_order():
    with pytest.raises(SeriesError):
        S({1: 1}, 5).compose(S({0: 1, 1: 1}, 5))


def test_derivative():
    s = S({0: 7, 1: 2, 3: -1}, 6)
    assert s.derivative().as_dict() == {0: Fraction(2), 2: Fraction(-3)}


def test_invert_parameter_roundtrip():
    u = S({1: 1, 2: -1, 3: 1, 4: -1}, 12)
    t_of_u = u.invert_parameter()
    back = u.compose(t_of_u)
    assert back.coefficient(1) == 1
    assert all(back.coefficient(k) == 0 for k in range(2, back.precision))


@given(series(min_order=1, max_terms=5, precision=10))
def test_invert_parameter_property(u):
    if u.order() != 1:
        return
    back = u.compose(u.invert_parameter())
    assert back.coefficient(1) == 1
    for k in range(2, back.precision):
        assert back.coefficient(k) == 0


def test_flip_negates_odd_exponents():
    s = S({2: 1, 3: 2, 4: -1}, 8)
    f = s.flip()
    assert f.as_dict() == {2: Fraction(1), 3: Fraction(-2), 4: Fraction(-1)}


def test_abs_bound_dominates():
    s = S({1: -2, 3: 5}, 8)
    for t in (0.0, 0.1, 0.3):
        assert abs(s.eval(t)) <= s.abs_bound(0.3) + 1e-12
