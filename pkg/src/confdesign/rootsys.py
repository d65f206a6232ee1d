"""Root systems with exact coordinates and harmonic root sums.

The zonal harmonics R4 and R6 below depend on x only through (x, y), |x|^2
and |y|^2, so a sum over a root system needs nothing beyond inner products.
That is what lets the embedded realizations (A_n inside R^{n+1}, E6/E7
inside R^8, G2 inside R^3) use the rank as the dimension parameter while the
roots carry extra coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .exact import PolyRing, RatFunc, as_rat

Vector = Tuple[Fraction, ...]
Coeff = Union[Fraction, RatFunc]

# closed forms in the dimension parameter live in their own one-variable ring
NRING = PolyRing(("n",))
N = RatFunc(NRING.gen("n"))

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")
MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
EXCEPTIONAL = {("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)}


class DomainError(ValueError):
    """Input outside the range where an operation is defined."""


def _vec(xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def dot(x: Sequence, y: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def _unit(i: int, dim: int, scale=1) -> Vector:
    return tuple(Fraction(scale) if k == i else Fraction(0) for k in range(dim))


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    roots: Tuple[Vector, ...]
    coxeter: int
    ambient_dim: int

    def __post_init__(self):
        roots = set(self.roots)
        if any(tuple(-x for x in a) not in roots for a in roots):
            raise ValueError(f"{self.label}: not closed under negation")
        if len(self.norms()) > 2:
            raise ValueError(f"{self.label}: more than two root lengths")
        if len(self.roots) != self.rank * self.coxeter:
            raise ValueError(f"{self.label}: |roots| != rank * coxeter number")

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def simply_laced(self) -> bool:
        return self.family in ("A", "D", "E")

    def norms(self) -> Tuple[Fraction, ...]:
        return tuple(sorted({dot(a, a) for a in self.roots}))

    def default_y(self) -> Vector:
        """The test vector used for the zonal sums: the lexicographically
        largest root for simply-laced types, e1 + e2 for B, C, F and
        e1 - e2 for G2."""
        d = self.ambient_dim
        if self.simply_laced:
            return max(self.roots)
        if self.family == "G":
            return _vec([1, -1] + [0] * (d - 2))
        return _vec([1, 1] + [0] * (d - 2))


def _d_roots(n: int) -> List[Vector]:
    out = []
    for i, j in combinations(range(n), 2):
        for s, t in product((1, -1), repeat=2):
            v = [0] * n
            v[i], v[j] = s, t
            out.append(_vec(v))
    return out


def _e8_roots() -> List[Vector]:
    half = Fraction(1, 2)
    out = _d_roots(8)
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            out.append(tuple(s * half for s in signs))
    return out


def _orthogonal_to(roots, *vs) -> List[Vector]:
    return [a for a in roots if all(dot(a, v) == 0 for v in vs)]


def build_roots(family: str, rank: Optional[int] = None) -> RootSystem:
    """Exact root system of the given type.  Accepts ("E", 8) or "E8".

    Simply-laced roots have norm 2; B, C, F4 and G2 use the integer (and
    half-integer for F4) realizations with long roots of norm 2, 4, 2 and 6.
    E7 and E6 are the parts of E8 orthogonal to one root, respectively to
    the two roots of an A2.
    """
    if rank is None:
        family, rank = family[0], int(family[1:])
    family = family.upper()
    if family not in FAMILIES:
        raise DomainError(f"unknown root system family {family!r}")
    if family in MIN_RANK and rank < MIN_RANK[family]:
        raise DomainError(f"{family}_n needs n >= {MIN_RANK[family]}, got {rank}")
    if family in "EFG" and (family, rank) not in EXCEPTIONAL:
        raise DomainError(f"no exceptional root system {family}{rank}")

    if family == "A":
        d = rank + 1
        roots = [tuple(_unit(i, d)[k] - _unit(j, d)[k] for k in range(d))
                 for i in range(d) for j in range(d) if i != j]
        return RootSystem("A", rank, tuple(sorted(roots)), rank + 1, d)
    if family == "D":
        return RootSystem("D", rank, tuple(sorted(_d_roots(rank))), 2 * rank - 2, rank)
    if family in "BC":
        scale = 1 if family == "B" else 2
        short = [_unit(i, rank, s * scale) for i in range(rank) for s in (1, -1)]
        roots = _d_roots(rank) + short
        return RootSystem(family, rank, tuple(sorted(roots)), 2 * rank, rank)
    if family == "E":
        e8 = _e8_roots()
        half = Fraction(1, 2)
        v1 = (half,) * 8
        v2 = _vec([0] * 6 + [-1, -1])
        picked = {8: e8, 7: _orthogonal_to(e8, v1), 6: _orthogonal_to(e8, v1, v2)}[rank]
        return RootSystem("E", rank, tuple(sorted(picked)), {6: 12, 7: 18, 8: 30}[rank], 8)
    if family == "F":
        half = Fraction(1, 2)
        roots = _d_roots(4) + [_unit(i, 4, s) for i in range(4) for s in (1, -1)]
        roots += [tuple(s * half for s in signs) for signs in product((1, -1), repeat=4)]
        return RootSystem("F", 4, tuple(sorted(roots)), 12, 4)
    base = [(1, -1, 0), (0, 1, -1), (-1, 0, 1), (2, -1, -1), (-1, 2, -1), (-1, -1, 2)]
    roots = [_vec(v) for v in base] + [_vec(-x for x in v) for v in base]
    return RootSystem("G", 2, tuple(sorted(roots)), 6, 3)


# --- polynomials ---------------------------------------------------------

def _padd(acc: Dict, mono, c):
    v = acc.get(mono, 0) + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


def poly_mul(a: Mapping, b: Mapping) -> Dict:
    out: Dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            _padd(out, tuple(x + y for x, y in zip(ma, mb)), ca * cb)
    return out


def laplacian_terms(terms: Mapping, nvars: int, metric=None) -> Dict:
    """Sum of g^{ij} d_i d_j applied to a polynomial in monomial form; the
    identity metric when ``metric`` is None."""
    out: Dict = {}
    for mono, c in terms.items():
        for i in range(nvars):
            for j in range(nvars):
                g = (1 if i == j else 0) if metric is None else metric[i][j]
                if not g:
                    continue
                m = list(mono)
                k = m[i]
                if k == 0:
                    continue
                coeff = c * k
                m[i] -= 1
                k2 = m[j]
                if k2 == 0:
                    continue
                coeff = coeff * k2
                m[j] -= 1
                _padd(out, tuple(m), coeff * g)
    return out


@dataclass(frozen=True)
class HarmonicPoly:
    """Homogeneous polynomial killed by the Laplacian sum g^{ij} d_i d_j,
    flat unless a metric g is given (lattice coordinates use the inverse
    Gram matrix).  Coefficients are Fractions, or RatFuncs in n."""

    nvars: int
    terms: Mapping[Tuple[int, ...], Coeff]
    metric: Optional[Tuple[Tuple[Fraction, ...], ...]] = None
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        terms = {tuple(m): c for m, c in self.terms.items() if c}
        object.__setattr__(self, "terms", terms)
        if any(len(m) != self.nvars for m in terms):
            raise ValueError("exponent vector length differs from nvars")
        if len({sum(m) for m in terms}) > 1:
            raise ValueError("polynomial is not homogeneous")
        if self.check and laplacian_terms(terms, self.nvars, self.metric):
            raise ValueError("polynomial is not harmonic")

    @property
    def degree(self) -> int:
        return sum(next(iter(self.terms))) if self.terms else 0

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, x: Sequence) -> Coeff:
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for xi, k in zip(x, mono):
                if k:
                    v = v * Fraction(xi) ** k
            total = total + v
        return total


@dataclass(frozen=True)
class ZonalHarmonic:
    """sum_b coeffs[b] * (x,y)^(l-2b) * |x|^(2b) * |y|^(2b): a degree-l
    polynomial in x that is harmonic on any dim-dimensional space containing
    y.  ``dim`` may be an int or the symbol n (a RatFunc)."""

    degree: int
    dim: object
    y: Vector
    coeffs: Tuple[Coeff, ...]

    def __post_init__(self):
        bad = self.zonal_laplacian()
        if any(c != 0 for c in bad):
            raise ValueError("zonal polynomial is not harmonic in the given dimension")

    def zonal_laplacian(self) -> List[Coeff]:
        """Coefficients of the Laplacian in the basis s^(l-2-2b) p^b q^(b+1)
        with s = (x,y), p = |x|^2, q = |y|^2.  Uses
        Lap(s^a p^b) = a(a-1) q s^(a-2) p^b + (4ab + 4b(b-1) + 2bn) s^a p^(b-1)."""
        l, n = self.degree, self.dim
        out: List[Coeff] = [Fraction(0)] * max(l // 2, 1)
        for b, c in enumerate(self.coeffs):
            a = l - 2 * b
            if a >= 2:
                out[b] = out[b] + c * (a * (a - 1))
            if b >= 1:
                out[b - 1] = out[b - 1] + c * (4 * a * b + 4 * b * (b - 1) + n * (2 * b))
        return out

    def __call__(self, x: Sequence) -> Coeff:
        return self.from_products(dot(x, self.y), dot(x, x))

    def from_products(self, s, p) -> Coeff:
        q = dot(self.y, self.y)
        total = Fraction(0)
        for b, c in enumerate(self.coeffs):
            total = total + c * (s ** (self.degree - 2 * b) * (p * q) ** b)
        return total

    def expand(self, nvars: Optional[int] = None) -> HarmonicPoly:
        """Monomial form in len(y) variables.  The flat-Laplacian check runs
        when the dimension parameter equals the number of variables."""
        nvars = len(self.y) if nvars is None else nvars
        lin = {_unit_exp(i, nvars): yi for i, yi in enumerate(self.y) if yi}
        sq = {_unit_exp(i, nvars, 2): Fraction(1) for i in range(nvars)}
        q = dot(self.y, self.y)
        one = {(0,) * nvars: Fraction(1)}
        total: Dict = {}
        for b, c in enumerate(self.coeffs):
            term = {m: v * c * q ** b for m, v in
                    poly_mul(_ppow(lin, self.degree - 2 * b, one), _ppow(sq, b, one)).items()}
            for m, v in term.items():
                _padd(total, m, v)
        return HarmonicPoly(nvars, total, check=self.dim == nvars)


def _unit_exp(i: int, n: int, k: int = 1) -> Tuple[int, ...]:
    return tuple(k if j == i else 0 for j in range(n))


def _ppow(p: Mapping, k: int, one: Mapping) -> Dict:
    out = dict(one)
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def gegenbauer_R(l: int, n, y: Sequence) -> ZonalHarmonic:
    """The zonal harmonic of degree 4 or 6 with pole y in dimension n
    (an int, or None for the symbol n)."""
    if l not in (4, 6):
        raise DomainError("only degrees 4 and 6 are provided")
    y = _vec(y)
    if not any(y):
        raise DomainError("y must be nonzero")
    nn = N if n is None else Fraction(n)
    if n is not None and n < 1:
        raise DomainError("dimension must be at least 1")
    if l == 4:
        coeffs = (Fraction(1), -6 / (4 + nn), 3 / (8 + 6 * nn + nn * nn))
    else:
        coeffs = (Fraction(1), -15 / (8 + nn), 45 / (48 + 14 * nn + nn * nn),
                  -15 / (192 + 104 * nn + 18 * nn * nn + nn ** 3))
    return ZonalHarmonic(l, nn, y, tuple(_simplify(c) for c in coeffs))


def _simplify(c):
    if isinstance(c, RatFunc) and c.is_constant():
        return c.to_rat()
    return c


def root_sum(P: Union[HarmonicPoly, ZonalHarmonic], phi: RootSystem) -> Coeff:
    """Sum of P over all roots.  Summation order is the sorted root order,
    so the result is reproducible."""
    if isinstance(P, HarmonicPoly) and P.nvars != phi.ambient_dim:
        raise DomainError("polynomial and root system live in different dimensions")
    if isinstance(P, ZonalHarmonic) and len(P.y) != phi.ambient_dim:
        raise DomainError("pole vector and root system live in different dimensions")
    total = Fraction(0)
    for a in phi.roots:
        total = total + P(a)
    return total


def zonal_root_sum(l: int, phi: RootSystem, y: Optional[Sequence] = None) -> Fraction:
    """R_l with pole y (default: the standard choice) summed over phi, with
    the rank as dimension parameter."""
    y = phi.default_y() if y is None else _vec(y)
    return root_sum(gegenbauer_R(l, phi.rank, y), phi)


@dataclass(frozen=True)
class RootCountProfile:
    n0: int
    n1: int
    n2: int


def rootcount_profile(phi: RootSystem, y: Optional[Sequence] = None) -> RootCountProfile:
    """Counts of roots with (y, a) = 0, 1, 2 for a root y of a simply-laced
    system, after checking the identities that make the closed forms work."""
    if not phi.simply_laced:
        raise DomainError(f"{phi.label} is not simply laced")
    y = phi.default_y() if y is None else _vec(y)
    if y not in set(phi.roots):
        raise DomainError("y must be a root")
    counts: Dict[Fraction, int] = {}
    for a in phi.roots:
        s = dot(a, y)
        counts[s] = counts.get(s, 0) + 1
    n = {i: counts.get(Fraction(i), 0) for i in (-2, -1, 0, 1, 2)}
    if set(counts) - set(map(Fraction, n)):
        raise DomainError("inner products outside {-2..2}; roots not of norm 2?")
    prof = RootCountProfile(n[0], n[1], n[2])
    checks = (
        prof.n2 == 1,
        n[-1] == n[1] and n[-2] == n[2],
        prof.n0 + 2 * prof.n1 + 2 * prof.n2 == len(phi.roots),
        prof.n1 == 2 * phi.coxeter - 4,
    )
    if not all(checks):
        raise AssertionError(f"{phi.label}: root count identities fail: {prof}")
    return prof


# --- closed forms in n ---------------------------------------------------

def _as_n(x) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc(NRING.const(x))


def simply_laced_form(l: int, h) -> RatFunc:
    """The simply-laced sum of R_l over roots of norm 2 with y a root, as a
    function of rank n and Coxeter number h."""
    n, h = N, _as_n(h)
    if l == 4:
        return 4 * (h * (n - 10) + 6 * (n + 2)) / (n + 2)
    return 4 * (30 * (n * n - 16) + h * (n * n - 48 * n + 272)) / (n * n + 12 * n + 32)


def _profile_sum(l: int, profile: Sequence[Tuple[int, int, RatFunc]], ynorm: int) -> RatFunc:
    R = gegenbauer_R(l, None, (Fraction(1),))
    total = _as_n(0)
    for s, p, count in profile:
        # R.from_products uses q = |y|^2 = 1; rescale the |y| powers by hand
        term = _as_n(0)
        for b, c in enumerate(R.coeffs):
            term = term + c * Fraction(s) ** (l - 2 * b) * (Fraction(p) * ynorm) ** b
        total = total + count * term
    return total


def family_profile(family: str) -> Tuple[List[Tuple[int, int, RatFunc]], int]:
    """Classes of roots by ((y, a), |a|^2) with their counts as functions of
    n, for the standard pole y.  Derived by direct counting on the
    realizations, independently of the simply-laced formula."""
    n = N
    if family == "A":
        # y = e1 - e2 in R^(n+1)
        d = [(2, 2, _as_n(1)), (1, 2, 2 * (n - 1)), (0, 2, n * (n + 1) - 2 - 4 * (n - 1)),
             (-1, 2, 2 * (n - 1)), (-2, 2, _as_n(1))]
        return d, 2
    # y = e1 + e2; the D_n part is shared by B_n and C_n
    d = [(2, 2, _as_n(1)), (1, 2, 4 * (n - 2)), (0, 2, 2 * n * (n - 1) - 2 - 8 * (n - 2)),
         (-1, 2, 4 * (n - 2)), (-2, 2, _as_n(1))]
    if family == "D":
        return d, 2
    if family == "B":
        return d + [(1, 1, _as_n(2)), (-1, 1, _as_n(2)), (0, 1, 2 * (n - 2))], 2
    if family == "C":
        return d + [(2, 4, _as_n(2)), (-2, 4, _as_n(2)), (0, 4, 2 * (n - 2))], 2
    raise DomainError(f"no closed form for family {family!r}")


TWO_TERM_FORMS = {
    ("B", 4): (8 * N * N - 60 * N + 112) / (N + 2),
    ("C", 4): 8 * (N * N - 16) / (N + 2),
}


def closed_form_sum(l: int, family: str, n: Optional[int] = None, h=None):
    """Closed form of the standard zonal root sum for a classical family.

    family "simply-laced" needs the Coxeter number h.  A and D substitute
    h = n+1 and h = 2n-2.  B and C use the two-term forms in
    degree 4 and the profile count in degree 6.  Returns a RatFunc in n when
    n is None, otherwise a Fraction.
    """
    if l not in (4, 6):
        raise DomainError("only degrees 4 and 6")
    if family == "simply-laced":
        if h is None:
            raise DomainError("simply-laced form needs the Coxeter number")
        form = simply_laced_form(l, h)
    elif family == "A":
        form = simply_laced_form(l, N + 1)
    elif family == "D":
        form = simply_laced_form(l, 2 * N - 2)
    elif family in ("B", "C"):
        form = TWO_TERM_FORMS.get((family, l))
        if form is None:
            prof, ynorm = family_profile(family)
            form = _profile_sum(l, prof, ynorm)
    else:
        raise DomainError(f"no closed form for family {family!r}")
    if n is None:
        return form
    if family in MIN_RANK and n < MIN_RANK[family]:
        raise DomainError(f"{family}_n needs n >= {MIN_RANK[family]}")
    return form.subs({"n": n}).to_rat()


@dataclass(frozen=True)
class SpecialValue:
    label: str
    r4: Fraction
    r6: Fraction
    reference_r6: Fraction

    @property
    def matches(self) -> bool:
        return self.r6 == self.reference_r6


def special_values() -> List[SpecialValue]:
    out = []
    from .expected import ROOT_R6

    for label, ref in ROOT_R6.items():
        phi = build_roots(label)
        out.append(SpecialValue(label, zonal_root_sum(4, phi), zonal_root_sum(6, phi), ref))
    return out


# --- mixed components ----------------------------------------------------

Component = Union[RootSystem, int]


def hurley_sum(components: Sequence[Component],
               directions: Optional[Sequence[Sequence]] = None) -> Fraction:
    """Sum of Q = x1^4 - 6 x1^2 x2^2 + x2^4 over the roots of a direct sum,
    where x_i = a(h^i) for unit vectors h^1, h^2 in the first two
    components.  An int component is an abelian summand of that rank.

    Directions default to the largest root of a nonabelian component and
    e1 for an abelian one; they are normalised to unit length, which keeps
    a(h)^4 = (a, u)^4 / |u|^4 rational.  The value is checked against the
    reduced form sum_1 a(h^1)^4 + sum_2 a(h^2)^4.
    """
    if len(components) < 2:
        raise DomainError("need at least two components")
    if all(isinstance(c, int) for c in components):
        raise DomainError("all components abelian")
    dims = [c if isinstance(c, int) else c.ambient_dim for c in components]
    offsets = [sum(dims[:i]) for i in range(len(dims))]
    total_dim = sum(dims)

    def embed(v, i):
        out = [Fraction(0)] * total_dim
        for k, x in enumerate(v):
            out[offsets[i] + k] = Fraction(x)
        return tuple(out)

    if directions is None:
        directions = [max(c.roots) if not isinstance(c, int) else _unit(0, c)
                      for c in components[:2]]
    us = [embed(directions[i], i) for i in range(2)]
    unorm = [dot(u, u) for u in us]

    roots = [embed(a, i) for i, c in enumerate(components)
             if not isinstance(c, int) for a in c.roots]

    def fourth(a, i):
        return dot(a, us[i]) ** 4 / unorm[i] ** 2

    def mixed(a):
        return dot(a, us[0]) ** 2 * dot(a, us[1]) ** 2 / (unorm[0] * unorm[1])

    full = sum((fourth(a, 0) - 6 * mixed(a) + fourth(a, 1) for a in roots), Fraction(0))
    reduced = Fraction(0)
    for i in range(2):
        c = components[i]
        if not isinstance(c, int):
            reduced += sum((fourth(embed(a, i), i) for a in c.roots), Fraction(0))
    if full != reduced:
        raise AssertionError("mixed terms did not cancel")
    return full


# --- affine levels -------------------------------------------------------

LIE_DATA = {"A1": (3, 2), "E8": (248, 30)}  # (dimension, dual Coxeter number)


def affine_central_charge(label: str, k) -> Fraction:
    dim, g = LIE_DATA[label]
    k = as_rat(k)
    return dim * k / (k + g)


def integral_levels(label: str, charges: Sequence = (1, 8, 16)) -> Dict[Fraction, Optional[int]]:
    """For each central charge, the positive integer level reaching it, or
    None when there is none."""
    dim, g = LIE_DATA[label]
    out = {}
    for c in map(as_rat, charges):
        k = c * g / (dim - c) if c != dim else None
        out[c] = int(k) if k is not None and k > 0 and k.denominator == 1 else None
    return out


__all__ = [
    "DomainError", "RootSystem", "HarmonicPoly", "ZonalHarmonic", "RootCountProfile",
    "SpecialValue", "build_roots", "gegenbauer_R", "root_sum", "zonal_root_sum",
    "rootcount_profile", "closed_form_sum", "simply_laced_form", "family_profile",
    "special_values", "hurley_sum", "affine_central_charge", "integral_levels",
    "laplacian_terms", "poly_mul", "dot", "NRING",
]
