"""Truncated q-expansions: eta, Delta, j, the cube root of j, Virasoro
vacuum characters, extremal characters and a lambda-refined lattice
character.

A :class:`QSeries` is ``q^(lead/48) * sum_i coeffs[i] q^i``; exponents live on
the grid (1/48)Z so that c = 1/2 characters fit without special cases.  The
coefficient list is exactly the known part of the series: ``len(coeffs)``
is the relative precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import as_rat, solve_linear

GRID = 48


class LaurentPoly:
    """Sparse Laurent polynomial in one variable lambda, weight -> Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[int, object]] = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        return x if isinstance(x, LaurentPoly) else cls({0: x})

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            s = Fraction(other)
            return LaurentPoly({k: v * s for k, v in self.terms.items()})
        out: Dict[int, Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return self.terms == LaurentPoly.coerce(other).terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, k: int) -> Fraction:
        return self.terms.get(k, Fraction(0))

    def is_symmetric(self) -> bool:
        return all(self.coeff(-k) == v for k, v in self.terms.items())

    def __repr__(self):
        return f"LaurentPoly({dict(sorted(self.terms.items()))})"


@dataclass(frozen=True)
class QSeries:
    lead: int
    coeffs: Tuple[object, ...]

    # construction ----------------------------------------------------------
    @classmethod
    def from_list(cls, coeffs: Sequence, lead: int = 0) -> "QSeries":
        return cls(lead, tuple(c if isinstance(c, LaurentPoly) else Fraction(c) for c in coeffs))

    @classmethod
    def one(cls, n: int) -> "QSeries":
        return cls.from_list([1] + [0] * (n - 1))

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def end(self) -> int:
        """First unknown exponent, in grid units."""
        return self.lead + GRID * len(self.coeffs)

    def truncate(self, n: int) -> "QSeries":
        return QSeries(self.lead, self.coeffs[:n])

    def coefficient(self, exp48: int):
        """Coefficient of q^(exp48/48)."""
        off, rem = divmod(exp48 - self.lead, GRID)
        if rem or off < 0:
            return Fraction(0)
        if off >= len(self.coeffs):
            raise IndexError("exponent beyond the known precision")
        return self.coeffs[off]

    def shift(self, exp48: int) -> "QSeries":
        """Multiply by q^(exp48/48)."""
        return QSeries(self.lead + exp48, self.coeffs)

    # arithmetic ------------------------------------------------------------
    def _aligned(self, other: "QSeries"):
        if (self.lead - other.lead) % GRID:
            raise ValueError("series live on different cosets of the q-grid")
        lead = min(self.lead, other.lead)
        end = min(self.end(), other.end())
        n = (end - lead) // GRID

        def pad(s):
            off = (s.lead - lead) // GRID
            z = _zero_like(s.coeffs)
            vals = [z] * off + list(s.coeffs)
            return vals[:n] + [z] * max(0, n - len(vals))

        return lead, pad(self), pad(other)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return self._add_constant(other)
        lead, a, b = self._aligned(other)
        return QSeries(lead, tuple(x + y for x, y in zip(a, b)))

    def _add_constant(self, x) -> "QSeries":
        if not x:
            return self
        if self.lead % GRID or self.end() <= 0:
            raise ValueError("constant term is off the grid or beyond the precision")
        coeffs = list(self.coeffs)
        if self.lead > 0:
            coeffs = [_zero_like(coeffs)] * (self.lead // GRID) + coeffs
            lead = 0
        else:
            lead = self.lead
        idx = -lead // GRID
        coeffs[idx] = coeffs[idx] + x
        return QSeries(lead, tuple(coeffs))

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.lead, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries(self.lead, tuple(x * other for x in self.coeffs))
        n = min(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            acc = _zero_like(a)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return QSeries(self.lead + other.lead, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        a = self.coeffs
        if not a or not a[0] or isinstance(a[0], LaurentPoly):
            raise ZeroDivisionError("series needs an invertible rational leading coefficient")
        inv0 = 1 / Fraction(a[0])
        out = [inv0]
        for k in range(1, len(a)):
            acc = _zero_like(a)
            for i in range(1, k + 1):
                if a[i]:
                    acc = acc + a[i] * out[k - i]
            out.append(-acc * inv0)
        return QSeries(-self.lead, tuple(out))

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QSeries(k * self.lead, (Fraction(1),) + (Fraction(0),) * (len(self.coeffs) - 1))
        base = QSeries(0, self.coeffs)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def root(self, n: int) -> "QSeries":
        """The unique n-th root with constant term 1 (Newton iteration)."""
        if self.lead % n:
            raise ValueError("leading exponent not divisible by the root order")
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("root needs leading coefficient 1")
        f = QSeries(0, self.coeffs)
        y = QSeries.one(len(self.coeffs))
        # each step doubles the number of correct terms
        for _ in range(max(1, math.ceil(math.log2(len(self.coeffs) + 1))) + 1):
            y = (y * (n - 1) + f * (y ** (n - 1)).inverse()) * Fraction(1, n)
        return QSeries(self.lead // n, y.coeffs)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        try:
            _, a, b = self._aligned(other)
        except ValueError:
            return False
        return all(x == y for x, y in zip(a, b))

    def __hash__(self):
        return hash((self.lead, self.coeffs))

    def to_json(self) -> dict:
        return {"lead48": self.lead, "coeffs": [str(x) for x in self.coeffs]}


def _zero_like(coeffs):
    for x in coeffs:
        if isinstance(x, LaurentPoly):
            return LaurentPoly()
    return Fraction(0)


# ---------------------------------------------------------------------------
# standard series


def euler_product(n: int, start: int = 1) -> QSeries:
    """prod_{m >= start} (1 - q^m) to n terms."""
    coeffs = [Fraction(0)] * n
    coeffs[0] = Fraction(1)
    for m in range(start, n):
        for i in range(n - 1, m - 1, -1):
            coeffs[i] -= coeffs[i - m]
    return QSeries(0, tuple(coeffs))


def qs_eta(n: int) -> QSeries:
    """eta = q^(1/24) prod (1 - q^m), n terms."""
    return euler_product(n).shift(2)


def qs_delta(n: int) -> QSeries:
    """Delta = q prod (1 - q^m)^24."""
    return (euler_product(n) ** 24).shift(GRID)


def _sigma(k: int, m: int) -> int:
    return sum(d ** k for d in range(1, m + 1) if m % d == 0)


def eisenstein(weight: int, n: int) -> QSeries:
    """E_4 or E_6 normalised with constant term 1."""
    factor = {4: 240, 6: -504}[weight]
    return QSeries.from_list([1] + [factor * _sigma(weight - 1, m) for m in range(1, n)])


def qs_j(n: int) -> QSeries:
    """j = E_4^3 / Delta, n terms from q^-1."""
    return (eisenstein(4, n + 1) ** 3 / qs_delta(n + 1)).truncate(n)


def qs_cbrt_j(n: int) -> QSeries:
    """The cube root of j with leading term q^(-1/3)."""
    return qs_j(n).root(3)


def vacuum_character(c, n: int) -> QSeries:
    """q^(-c/24) prod_{m >= 2} (1 - q^m)^(-1)."""
    lead = -Fraction(c) * GRID / 24
    if lead.denominator != 1:
        raise ValueError(f"q^(-c/24) is off the 1/{GRID} grid for c = {c}")
    return euler_product(n, start=2).inverse().shift(int(lead))


def ising_vacuum_character(n: int) -> QSeries:
    """Character of the c = 1/2 minimal model L(1/2, 0): the even part of
    prod_m (1 + x^(2m-1)) in x = q^(1/2), times q^(-1/48)."""
    size = 2 * n
    coeffs = [0] * size
    coeffs[0] = 1
    for m in range(1, size, 2):
        for i in range(size - 1, m - 1, -1):
            coeffs[i] += coeffs[i - m]
    return QSeries.from_list(coeffs[0::2][:n], lead=-1)


# ---------------------------------------------------------------------------
# extremal characters


@dataclass(frozen=True)
class ExtremalChar:
    c: int
    k: int
    lambdas: Tuple[Fraction, ...]
    series: QSeries
    A: Tuple[Fraction, ...]

    @property
    def dim_v2(self) -> Fraction:
        return self.series.coefficient(self.series.lead + 2 * GRID)

    @property
    def minimal_weight(self) -> int:
        return self.k + 1


def extremal_character(c: int, n: int = 8) -> ExtremalChar:
    """Character sum_i lambda_i (cbrt j)^((c - 24 i)/8) agreeing with the
    vacuum character through q^k, k = floor(c/24)."""
    if c <= 0 or c % 8:
        raise ValueError("central charge must be a positive multiple of 8")
    k = c // 24
    n = max(n, k + 3)
    root = qs_cbrt_j(n)
    basis = [root ** ((c - 24 * i) // 8) for i in range(k + 1)]
    vac = vacuum_character(c, n)
    lead = vac.lead
    # match coefficients of q^(lead/48 + r), r = 0..k
    rows = [[b.coefficient(lead + GRID * r) for b in basis] for r in range(k + 1)]
    rhs = [vac.coefficient(lead + GRID * r) for r in range(k + 1)]
    lambdas = tuple(as_rat(x) for x in solve_linear(rows, rhs))
    series = basis[0] * lambdas[0]
    for lam, b in zip(lambdas[1:], basis[1:]):
        series = series + b * lam
    ratio = series / vac
    A = tuple(ratio.coefficient(GRID * r) for r in (k + 1, k + 2))
    return ExtremalChar(c, k, lambdas, series, A)


# ---------------------------------------------------------------------------
# modular form dimensions and design strength


def mform_dim(weight: int) -> int:
    """dim of holomorphic modular forms of the given weight for SL_2(Z)."""
    if weight < 0 or weight % 2:
        return 0
    if weight % 12 == 2:
        return weight // 12
    return weight // 12 + 1


def extremal_design_strength(c: int) -> Tuple[int, Tuple[int, ...]]:
    """(t, extra) for an extremal VOA of central charge c.

    A highest-weight vector of weight s has a trace function equal to
    Delta^(k+1) f with f of weight c/2 + s - 12(k+1); t is the largest s0
    such that f vanishes for all 1 <= s <= s0, and ``extra`` the next run
    of vanishing weights after the first non-vanishing one."""
    if c <= 0 or c % 8:
        raise ValueError("central charge must be a positive multiple of 8")
    k = c // 24

    def vanishes(s):
        return mform_dim(c // 2 + s - 12 * (k + 1)) == 0

    t = 0
    while vanishes(t + 1):
        t += 1
    extra = []
    s = t + 2
    while vanishes(s):
        extra.append(s)
        s += 1
    return t, tuple(extra)


def design_is_trivial(c: int) -> bool:
    """True once the minimal weight k + 1 exceeds the design strength."""
    t, _ = extremal_design_strength(c)
    return c // 24 + 1 > t


# ---------------------------------------------------------------------------
# the A_1 lattice character refined by the torus weight


@dataclass(frozen=True)
class A1Report:
    holds: bool
    order: int
    trivial: Tuple[Fraction, ...]
    expected: Tuple[Fraction, ...]
    failure: Optional[str] = None


def a1_character(n: int) -> QSeries:
    """(1 + sum_m (lambda^m + lambda^-m) q^(m^2)) / (q^(1/24) prod (1 - q^m))."""
    theta = [LaurentPoly() for _ in range(n)]
    theta[0] = LaurentPoly({0: 1})
    m = 1
    while m * m < n:
        theta[m * m] = LaurentPoly({m: 1, -m: 1})
        m += 1
    return QSeries(0, tuple(theta)) * euler_product(n).inverse().shift(-2)


def su2_multiplicities(x: LaurentPoly) -> Dict[int, Fraction]:
    """Decompose a symmetric Laurent polynomial into characters
    sum_{k=-i}^{i} lambda^k; returns i -> multiplicity."""
    if not x.is_symmetric():
        raise ValueError("weight multiset is not symmetric")
    top = max(x.terms, default=0)
    return {i: x.coeff(i) - x.coeff(i + 1) for i in range(top + 1) if x.coeff(i) - x.coeff(i + 1)}


def a1_identity_check(n: int = 11) -> A1Report:
    """Check that the trivial-representation multiplicities of the A_1
    lattice character equal the c = 1 Virasoro vacuum character through
    relative order n - 1."""
    chi = a1_character(n)
    expected = vacuum_character(1, n)
    trivial = []
    for r, x in enumerate(chi.coeffs):
        mult = su2_multiplicities(x)
        neg = [i for i, v in mult.items() if v < 0]
        if neg:
            return A1Report(False, r, tuple(trivial), expected.coeffs, f"negative multiplicity at order {r}")
        trivial.append(mult.get(0, Fraction(0)))
    ok = chi.lead == expected.lead and tuple(trivial) == expected.coeffs
    failure = None if ok else "trivial multiplicities differ from the vacuum character"
    return A1Report(ok, n - 1, tuple(trivial), expected.coeffs, failure)
