"""Newton-Puiseux expansion of one rational branch of f(x, y) = 0.

The classical Newton-polygon iteration, restricted to rational data: every
edge equation must have a rational root (after extracting the q-th power
structure of the edge), otherwise the expansion is refused with an explicit
error instead of a floating approximation.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .bivar import BivarPoly, poly_on_branch
from .branch import Branch, normalize_branch
from .errors import IrrationalRootError, PrecisionError, PuiseuxError, ReducibleError
from .series import TruncatedSeries


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _deflate(coeffs: list[Fraction], r: Fraction):
    """Divide sum(coeffs[k] C^k) by (C - r); return (quotient, remainder)."""
    d = len(coeffs) - 1
    quot = [Fraction(0)] * d
    carry = Fraction(coeffs[d])
    for k in range(d - 1, -1, -1):
        quot[k] = carry
        carry = coeffs[k] + carry * r
    return quot, carry


def rational_roots(coeffs: list[Fraction]) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicities of sum(coeffs[k] * C^k)."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [Fraction(c * den) for c in coeffs]
    cands = set()
    for p in _divisors(int(ints[0])) or [1]:
        for q in _divisors(int(ints[-1])):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    roots = []
    for r in sorted(cands):
        mult = 0
        work = ints[:]
        while len(work) > 1:
            quot, rem = _deflate(work, r)
            if rem != 0:
                break
            mult += 1
            work = quot
        if mult:
            roots.append((r, mult))
    return roots


def _qth_root(c: Fraction, q: int) -> Fraction | None:
    if q == 1:
        return c
    if c == 0 or (c < 0 and q % 2 == 0):
        return None
    sign = -1 if c < 0 else 1

    def iroot(n):
        r = round(n ** (1.0 / q))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** q == n:
                return cand
        return None

    pn = iroot(abs(c.numerator))
    pd = iroot(c.denominator)
    if pn is None or pd is None:
        return None
    return Fraction(sign * pn, pd)


def _branch_edges(f: BivarPoly):
    """Negative-slope edges of the Newton polygon at the origin.

    Each edge is (q, m, psi): the edge exponent is m/q in lowest terms and
    psi is the compressed edge polynomial in C = c^q.
    """
    coeffs = f.as_dict()
    minb: dict[int, int] = {}
    for a, b in coeffs:
        if a not in minb or b < minb[a]:
            minb[a] = b
    pts = sorted(minb.items())
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    edges = []
    for (a1, b1), (a2, b2) in zip(hull, hull[1:]):
        if b2 >= b1:
            continue
        g = math.gcd(a2 - a1, b1 - b2)
        q, m = (b1 - b2) // g, (a2 - a1) // g
        on_edge = [(a, b) for (a, b) in coeffs
                   if (a - a1) * (b2 - b1) == (b - b1) * (a2 - a1) and a1 <= a <= a2]
        b_low = min(b for _, b in on_edge)
        deg = max((b - b_low) // q for _, b in on_edge)
        psi = [Fraction(0)] * (deg + 1)
        for a, b in on_edge:
            psi[(b - b_low) // q] += coeffs[(a, b)]
        edges.append((q, m, psi))
    return edges


def _transform(f: BivarPoly, q: int, m: int, c: Fraction) -> BivarPoly:
    """Substitute x -> x^q, y -> x^m (c + y), then divide by the full x-power."""
    acc: dict[tuple[int, int], Fraction] = {}
    for (a, b), coef in f.terms:
        base = a * q + b * m
        for k in range(b + 1):
            val = coef * math.comb(b, k) * c ** (b - k)
            if val:
                key = (base, k)
                acc[key] = acc.get(key, Fraction(0)) + val
    g = BivarPoly.from_terms(acc)
    if g.is_zero():
        return g
    shift = min(a for (a, _), _ in g.terms)
    return BivarPoly.from_terms({(a - shift, b): v for (a, b), v in g.terms})


def newton_puiseux(f: BivarPoly, n_max: int = 16, precision: int = 64) -> Branch:
    """One rational branch (t^n, y(t)) of f with f(x(t), y(t)) = 0 mod t^precision."""
    if f.is_zero():
        raise PuiseuxError("zero polynomial")
    if all(a > 0 for (a, _), _ in f.terms):
        raise ReducibleError("x divides f; the y-axis component is out of scope")
    if any(a == 0 and b == 0 for (a, b), _ in f.terms):
        raise PuiseuxError("f does not vanish at the origin")

    out_terms: list[tuple[Fraction, Fraction]] = []  # (x-exponent, coefficient)
    gamma = Fraction(0)
    denom = 1
    cur = f
    exact = False
    last_mult = 1
    guard = 4 * precision + 64

    for _ in range(guard):
        if all(b > 0 for (_, b), _ in cur.terms):
            if min(b for (_, b), _ in cur.terms) > 1:
                raise ReducibleError("f has a multiple branch (square factor)")
            exact = True
            break
        if out_terms and out_terms[-1][0] * denom >= precision:
            break
        edges = _branch_edges(cur)
        if not edges:
            raise PuiseuxError("no branch continuation at the origin")
        if len(edges) > 1:
            raise ReducibleError("Newton polygon has several edges (several branches)")
        q, m, psi = edges[0]
        roots = rational_roots(psi)
        if not roots:
            raise IrrationalRootError(
                "edge equation has no rational root; branch needs irrational coefficients")
        deg = len(psi) - 1
        if len(roots) > 1 or deg > roots[0][1]:
            raise ReducibleError("edge equation splits into several branches")
        big_c, last_mult = roots[0]
        c = _qth_root(big_c, q)
        if c is None:
            raise IrrationalRootError(
                f"edge coefficient needs an irrational {q}-th root of {big_c}")
        denom *= q
        if denom > n_max:
            raise PuiseuxError(f"denominator {denom} exceeds n_max={n_max}")
        gamma = gamma + Fraction(m, denom)
        out_terms.append((gamma, c))
        cur = _transform(cur, q, m, c)
    else:
        raise PuiseuxError("expansion did not terminate (guard exceeded)")

    if not exact and last_mult > 1:
        raise PrecisionError(
            "precision too small to separate coincident branches (edge root stays multiple)")

    n = denom
    exps = [int(g * n) for g, _ in out_terms]
    if any(g * n != e for (g, _), e in zip(out_terms, exps)):
        raise PuiseuxError("internal: non-integral t-exponent")
    red = math.gcd(n, *exps) if exps else n
    if red > 1:
        if not exact:
            raise PrecisionError(
                "precision too small to separate branches (truncation is non-primitive)")
        n //= red
        exps = [e // red for e in exps]

    y_terms: dict[int, Fraction] = {}
    for (_, c), e in zip(out_terms, exps):
        if e < precision:
            y_terms[e] = y_terms.get(e, Fraction(0)) + c
        else:
            exact = False  # a known term falls beyond the requested truncation
    visible = [n] + sorted(y_terms)
    if math.gcd(*visible) > 1:
        raise PrecisionError(
            "precision too small to separate branches (truncation is non-primitive)")
    xs = TruncatedSeries.monomial(n, 1, precision)
    ys = TruncatedSeries.from_terms(y_terms, precision)
    b = normalize_branch(Branch(xs, ys, label="", exact=exact))

    res = poly_on_branch(f, b)
    if not res.is_zero():
        raise PuiseuxError(f"internal: residual has visible order {res.order()}")
    return b
