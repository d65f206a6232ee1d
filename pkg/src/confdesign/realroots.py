"""Exact real-root isolation for univariate rational polynomials.

Roots are returned as rational intervals ``(lo, hi)`` containing exactly one
root, found by Sturm-sequence counting and bisection.  Decimal digits are
only ever produced from such intervals, so a truncated decimal like
``10.04101...`` can be checked by a sign change on exact rational endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Tuple

import flint

from .exact import MPoly, as_rat

Interval = Tuple[Fraction, Fraction]


def to_fmpq_poly(p, var: Optional[str] = None) -> flint.fmpq_poly:
    """Coefficients of a univariate MPoly (or coefficient list, constant
    term first) as a flint polynomial."""
    if isinstance(p, flint.fmpq_poly):
        return p
    if isinstance(p, MPoly):
        names = p.variables()
        if len(names) > 1:
            raise ValueError(f"expected a univariate polynomial, got variables {names}")
        if var is None:
            var = names[0] if names else p.ring.names[0]
        idx = p.ring.names.index(var)
        deg = max((m[idx] for m in p.terms), default=0)
        coeffs = [Fraction(0)] * (deg + 1)
        for mono, x in p.terms.items():
            coeffs[mono[idx]] = x
        return flint.fmpq_poly([flint.fmpq(x.numerator, x.denominator) for x in coeffs])
    return flint.fmpq_poly([flint.fmpq(Fraction(x).numerator, Fraction(x).denominator) for x in p])


def _eval(p: flint.fmpq_poly, x: Fraction) -> Fraction:
    v = p(flint.fmpq(x.numerator, x.denominator))
    return Fraction(int(v.p), int(v.q))


def sturm_sequence(p: flint.fmpq_poly) -> List[flint.fmpq_poly]:
    seq = [p, p.derivative()]
    while seq[-1].degree() > 0:
        r = seq[-2] % seq[-1]
        if r == 0:
            break
        seq.append(-r)
    return seq


def _sign_changes(seq, x: Fraction) -> int:
    signs = [s for s in (_eval(q, x) for q in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _cauchy_bound(p: flint.fmpq_poly) -> Fraction:
    coeffs = [Fraction(int(c.p), int(c.q)) for c in p.coeffs()]
    lead = coeffs[-1]
    return 1 + max(abs(c / lead) for c in coeffs[:-1]) if len(coeffs) > 1 else Fraction(1)


def isolate_real_roots(p, width: Fraction = Fraction(1, 10 ** 12)) -> List[Interval]:
    """Disjoint rational intervals, each holding exactly one real root of p,
    sorted increasingly and refined to at most ``width``.  Exact rational
    roots come back as degenerate intervals (r, r)."""
    p = to_fmpq_poly(p)
    if p.degree() < 1:
        return []
    out: List[Interval] = []
    for f, _ in p.factor()[1]:
        if f.degree() == 1:
            c0, c1 = f.coeffs()
            r = -Fraction(int(c0.p), int(c0.q)) / Fraction(int(c1.p), int(c1.q))
            out.append((r, r))
        else:
            out.extend(_isolate_irreducible(f, width))
    return sorted(out)


def _isolate_irreducible(p: flint.fmpq_poly, width: Fraction) -> List[Interval]:
    seq = sturm_sequence(p)
    bound = _cauchy_bound(p)
    out: List[Interval] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = _sign_changes(seq, lo) - _sign_changes(seq, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(_refine(p, lo, hi, width))
            continue
        # p is irreducible of degree >= 2, so the midpoint is never a root
        mid = (lo + hi) / 2
        stack.extend([(lo, mid), (mid, hi)])
    return sorted(out)


def _refine(p, lo: Fraction, hi: Fraction, width: Fraction) -> Interval:
    # the Sturm count is for (lo, hi]; an endpoint root is exact
    if _eval(p, hi) == 0:
        return (hi, hi)
    flo = _eval(p, lo)
    if flo == 0:
        return (lo, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = _eval(p, mid)
        if fm == 0:
            return (mid, mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo, hi)


def contains_decimal(interval: Interval, decimal: str) -> bool:
    """True if the truncated decimal expansion ``decimal`` (e.g. "10.04101")
    is consistent with the root in ``interval``: the root lies in the
    half-open window [d, d + 10^-k) for positive d, (d - 10^-k, d] for
    negative d."""
    text = decimal.rstrip(".")
    d = Fraction(text)
    digits = len(text.split(".")[1]) if "." in text else 0
    ulp = Fraction(1, 10 ** digits)
    lo, hi = (d, d + ulp) if not text.startswith("-") else (d - ulp, d)
    return lo <= interval[0] and interval[1] <= hi


def approx(interval: Interval, digits: int = 6) -> str:
    """Decimal string for the midpoint, for display columns only."""
    mid = (interval[0] + interval[1]) / 2
    scaled = round(mid * 10 ** digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    return f"{sign}{scaled // 10 ** digits}.{scaled % 10 ** digits:0{digits}d}"


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class QuadraticSurd:
    """The number rational + coefficient * sqrt(radicand), radicand a
    square-free positive integer."""

    rational: Fraction
    coefficient: Fraction
    radicand: int

    def interval(self, width: Fraction = Fraction(1, 10 ** 12)) -> Interval:
        # a root of (x - r)^2 - b^2 D with the sign of b selecting the branch
        r, b, D = self.rational, self.coefficient, self.radicand
        poly = flint.fmpq_poly([_q(r * r - b * b * D), _q(-2 * r), 1])
        roots = isolate_real_roots(poly, width)
        return roots[-1] if b > 0 else roots[0]

    def __str__(self) -> str:
        sign = "+" if self.coefficient > 0 else "-"
        return f"{self.rational} {sign} {abs(self.coefficient)}*sqrt({self.radicand})"


def _q(x: Fraction) -> flint.fmpq:
    return flint.fmpq(x.numerator, x.denominator)


def squarefree_split(n: int) -> Tuple[int, int]:
    """n = s^2 * r with r square-free; returns (s, r).  Trial division is
    plenty for the small discriminants that occur here."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, r, f = 1, 1, 2
    while f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
            s *= f
        if n % f == 0:
            n //= f
            r *= f
        f += 1
    return s, r * n


def quadratic_roots(a, b, c) -> Tuple[object, object]:
    """Both roots of a x^2 + b x + c with rational coefficients, as
    Fractions when rational and QuadraticSurd otherwise (smaller first).
    Complex roots raise ValueError."""
    a, b, c = (as_rat(x) for x in (a, b, c))
    disc = b * b - 4 * a * c
    if disc < 0:
        raise ValueError("complex roots")
    root = rational_sqrt(disc)
    if root is not None:
        r1, r2 = (-b - root) / (2 * a), (-b + root) / (2 * a)
        return tuple(sorted((r1, r2)))
    # sqrt(p/q) = sqrt(p q) / q
    s, rad = squarefree_split(disc.numerator * disc.denominator)
    coeff = Fraction(s, disc.denominator) / (2 * a)
    centre = -b / (2 * a)
    lo, hi = QuadraticSurd(centre, -abs(coeff), rad), QuadraticSurd(centre, abs(coeff), rad)
    return lo, hi
