"""Exact truncated power series in one variable over the rationals.

A series is a finite set of (exponent, coefficient) pairs together with an
explicit truncation order ``precision``: coefficients of t^j for
j >= precision are unknown.  Every arithmetic operation propagates the
truncation order conservatively, and any decision that would need an unknown
coefficient raises :class:`~germflow.errors.PrecisionError` instead of
guessing.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionError, SeriesError


def _to_float(c: Fraction) -> float:
    """Fraction to double, saturating instead of raising beyond the range."""
    try:
        return float(c)
    except OverflowError:
        return float("inf") if c > 0 else float("-inf")


def _clean(terms, precision):
    out = []
    for exp, coef in sorted(terms.items()):
        if coef == 0 or exp >= precision:
            continue
        if exp < 0:
            raise SeriesError(f"negative exponent {exp} in power series")
        out.append((exp, coef))
    return tuple(out)


@dataclass(frozen=True)
class TruncatedSeries:
    terms: tuple[tuple[int, Fraction], ...]
    precision: int

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_terms(terms: dict[int, Fraction], precision: int) -> "TruncatedSeries":
        if precision < 1:
            raise SeriesError("precision must be >= 1")
        frac_terms = {int(e): Fraction(c) for e, c in terms.items()}
        return TruncatedSeries(_clean(frac_terms, precision), precision)

    @staticmethod
    def monomial(exp: int, coef, precision: int) -> "TruncatedSeries":
        return TruncatedSeries.from_terms({exp: Fraction(coef)}, precision)

    @staticmethod
    def zero(precision: int) -> "TruncatedSeries":
        return TruncatedSeries.from_terms({}, precision)

    # -- structure ---------------------------------------------------------

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def order(self) -> int | None:
        """Smallest stored exponent, or None when zero up to precision."""
        return self.terms[0][0] if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> Fraction:
        if not self.terms:
            raise SeriesError("zero series has no leading coefficient")
        return self.terms[0][1]

    def coefficient(self, exp: int) -> Fraction:
        if exp >= self.precision:
            raise PrecisionError(f"coefficient of t^{exp} beyond precision {self.precision}")
        for e, c in self.terms:
            if e == exp:
                return c
        return Fraction(0)

    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    def degree_bound(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    # -- ring operations ---------------------------------------------------

    def truncate(self, precision: int) -> "TruncatedSeries":
        p = min(self.precision, precision)
        return TruncatedSeries(tuple((e, c) for e, c in self.terms if e < p), p)

    def with_precision(self, precision: int) -> "TruncatedSeries":
        """Re-declare the truncation order.

        Raising the precision asserts that all coefficients between the old
        and new order are zero; only callers holding exact polynomial data
        may do that.
        """
        if precision <= self.precision:
            return self.truncate(precision)
        return TruncatedSeries(self.terms, precision)

    def neg(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple((e, -c) for e, c in self.terms), self.precision)

    def add(self, other: "TruncatedSeries") -> "TruncatedSeries":
        p = min(self.precision, other.precision)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return TruncatedSeries(_clean(acc, p), p)

    def sub(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.add(other.neg())

    def scale(self, coef) -> "TruncatedSeries":
        coef = Fraction(coef)
        if coef == 0:
            return TruncatedSeries.zero(self.precision)
        return TruncatedSeries(tuple((e, c * coef) for e, c in self.terms), self.precision)

    def add_const(self, coef) -> "TruncatedSeries":
        acc = self.as_dict()
        acc[0] = acc.get(0, Fraction(0)) + Fraction(coef)
        return TruncatedSeries(_clean(acc, self.precision), self.precision)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k (k may be negative if every exponent allows it)."""
        return TruncatedSeries(tuple((e + k, c) for e, c in self.terms), self.precision + k)

    def _order_floor(self) -> int:
        o = self.order()
        return o if o is not None else self.precision

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        p = min(self.precision + other._order_floor(), other.precision + self._order_floor())
        acc: dict[int, Fraction] = {}
        for e1, c1 in self.terms:
            if e1 >= p:
                break
            for e2, c2 in other.terms:
                e = e1 + e2
                if e >= p:
                    break
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return TruncatedSeries(_clean(acc, p), p)

    def pow(self, n: int) -> "TruncatedSeries":
        if n < 0:
            raise SeriesError("negative power of a series")
        out = TruncatedSeries.monomial(0, 1, self.precision + (n - 1) * self._order_floor()
                                       if n > 0 else self.precision)
        for _ in range(n):
            out = out.mul(self)
        return out

    def invert_unit(self, precision: int) -> "TruncatedSeries":
        """Inverse of a unit (order-0) series, modulo t^precision."""
        if self.order() != 0:
            raise SeriesError("only order-0 series have a series inverse")
        p = min(precision, self.precision)
        if p <= 0:
            raise PrecisionError("no precision left for series inverse")
        coeffs = self.as_dict()
        c0 = coeffs[0]
        inv = {0: 1 / c0}
        for k in range(1, p):
            s = Fraction(0)
            for e, c in self.terms:
                if 0 < e <= k:
                    s += c * inv.get(k - e, Fraction(0))
            if s:
                inv[k] = -s / c0
        return TruncatedSeries.from_terms(inv, p)

    def divide(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Quotient q with self = other * q.

        Errors when the divisor has no visible terms, or when the visible
        orders prove the quotient is not a power series.  The quotient's
        precision is min(T_a, T_b + ord(a) - ord(b)) - ord(b).
        """
        ob = other.order()
        if ob is None:
            raise PrecisionError("divisor is zero up to its precision")
        oa = self.order()
        if oa is not None and oa < ob:
            raise SeriesError(f"quotient not a power series (orders {oa} < {ob})")
        prec = min(self.precision, other.precision + self._order_floor() - ob) - ob
        if prec <= 0:
            raise PrecisionError("no precision left in quotient")
        if oa is None:
            return TruncatedSeries.zero(prec)
        num = self.shift(-ob)
        unit = other.shift(-ob)
        return num.mul(unit.invert_unit(prec)).truncate(prec)

    # -- composition -------------------------------------------------------

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(u)) for inner of order >= 1."""
        oi = inner._order_floor()
        if oi < 1:
            raise SeriesError("composition needs an inner series of order >= 1")
        p = min(self.precision * max(oi, 1), inner.precision)
        acc = TruncatedSeries.zero(p)
        # sparse Horner over descending exponents of the outer series
        prev = None
        for e, c in reversed(self.terms):
            if prev is None:
                acc = TruncatedSeries.monomial(0, c, p)
            else:
                acc = acc.mul(inner.pow(prev - e).truncate(p)).add_const(c)
            prev = e
        if prev is None:
            return acc
        return acc.mul(inner.pow(prev).truncate(p)).truncate(p)

    def derivative(self) -> "TruncatedSeries":
        return TruncatedSeries(
            tuple((e - 1, c * e) for e, c in self.terms if e >= 1),
            max(self.precision - 1, 1),
        )

    def invert_parameter(self) -> "TruncatedSeries":
        """Compositional inverse of an order-1 series, by Newton iteration."""
        if self.order() != 1:
            raise SeriesError("compositional inverse needs order exactly 1")
        target = self.precision
        ident = TruncatedSeries.monomial(1, 1, target)
        cur = TruncatedSeries.monomial(1, 1 / self.leading(), 2)
        deriv = self.derivative()
        prec = 2
        while prec < target:
            prec = min(2 * prec, target)
            cur = cur.with_precision(prec)  # candidate, higher terms refined below
            err = self.compose(cur).sub(ident.truncate(prec))
            cur = cur.sub(err.divide(deriv.compose(cur).with_precision(prec)))
        return cur.truncate(target)

    # -- parametrization helpers -------------------------------------------

    def flip(self) -> "TruncatedSeries":
        """Substitute t -> -t."""
        return TruncatedSeries(
            tuple((e, -c if e % 2 else c) for e, c in self.terms), self.precision
        )

    def eval(self, t: complex) -> complex:
        """Horner evaluation over the stored terms at a complex argument."""
        if not self.terms:
            return 0j
        try:
            acc = 0j
            prev = None
            for e, c in reversed(self.terms):
                if prev is None:
                    acc = complex(_to_float(c))
                else:
                    acc = acc * t ** (prev - e) + _to_float(c)
                prev = e
            return acc * t ** prev
        except OverflowError:
            return complex(float("inf"), 0.0)

    def abs_bound(self, radius: float) -> float:
        """Upper bound for |self(t)| over |t| <= radius (abs-coefficient sum)."""
        total = 0.0
        for e, c in self.terms:
            try:
                total += abs(_to_float(c)) * radius ** e
            except OverflowError:
                return float("inf")
        return total

    def __str__(self) -> str:
        if not self.terms:
            return f"O(t^{self.precision})"
        parts = [f"{c}*t^{e}" for e, c in self.terms]
        return " + ".join(parts) + f" + O(t^{self.precision})"
