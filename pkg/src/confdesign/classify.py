"""Design conditions from trace identities, and the scans built on them.

A conformal t-design forces tr o(v) = 0 for every highest-weight vector v of
degree 2..t in the tensor of two commuting Virasoro vacuum modules.  Each
such identity is affine in the moments m_i = tr a_0^i, so a set of them is a
linear system:

* on a lowest space W_h of a module it is homogeneous in (m_0, ..., m_k)
  with m_0 = dim W_h > 0, hence singular, giving a condition on (c, h);
* on V_2 of a VOA with V_1 = 0 it is inhomogeneous and pins down dim V_2.

When one of the two Virasoro factors is the c = 1/2 minimal model (the
"half" branch) the moments are replaced by eigenspace dimensions of a_0 for
the eigenvalues 0, 1/2, 1/16.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import flint
import numpy as np

from .exact import (CEH, MPoly, RatFunc, SingularSystemError, as_rat, det, nullspace, poly_factor,
                    primitive_vector, solve_linear)
from .realroots import QuadraticSurd, isolate_real_roots, quadratic_roots, to_fmpq_poly
from .traces import EIGENVALUES, TraceExpr, eigensplit, trace_V2, trace_lowest
from .virasoro import hw_solve

HALF = Fraction(1, 2)

# Highest-weight vectors feeding each system.  Kernel bases come from
# hw_solve: at degree 6 "a"/"b" have unit coefficient on b_{-2}^3 and
# a_{-2} b_{-2}^2; at degree 8 "a"/"b"/"c" on b_{-2}^4, a_{-2} b_{-2}^3 and
# a_{-2}^2 b_{-2}^2.  In the half branch the degree-8 vector differs between
# the module and V_2 systems; these are the choices whose conditions are the
# known closed forms (see tests/test_classify.py).
SYSTEM_VECTORS: Dict[Tuple[str, int, bool], Tuple[str, ...]] = {
    ("module", 6, False): ("v2", "v4", "v6a", "v6b"),
    ("module", 6, True): ("v2", "v4", "v6"),
    ("module", 8, False): ("v2", "v4", "v8a", "v8b", "v8c"),
    ("module", 8, True): ("v2", "v4", "v8a"),
    ("V2", 6, False): ("v2", "v4", "v6a", "v6b"),
    ("V2", 6, True): ("v2", "v4", "v6"),
    ("V2", 8, False): ("v2", "v4", "v8a", "v8b", "v8c"),
    ("V2", 8, True): ("v2", "v4", "v8b"),
}


class SingularDesignError(ValueError):
    """The design system is singular where it has to be solvable."""


# ---------------------------------------------------------------------------
# systems


@lru_cache(maxsize=None)
def design_vectors(c=None, e=None, half: bool = False) -> Dict[str, dict]:
    """Named highest-weight vectors of degrees 2..8.

    The half-branch degree-6 vector is rescaled to coprime integer
    polynomial coefficients."""
    kw = dict(c=c, e=e, half=half)
    out = {"v2": hw_solve(2, **kw)[0], "v4": hw_solve(4, **kw)[0]}
    six = hw_solve(6, **kw)
    eight = hw_solve(8, **kw)
    if half:
        out["v6"] = primitive_vector(six[0])
    else:
        out["v6a"], out["v6b"] = six
    for name, v in zip("abc", eight):
        out["v8" + name] = v
    return out


@dataclass(frozen=True)
class DesignSystem:
    """Affine trace identities ``const + sum_u coeff_u * u = 0``.

    ``unknowns`` are moment indices (0 = dimension) or, in the half branch,
    the eigenvalues whose eigenspace dimensions are unknown."""

    flavor: str
    strength: int
    half: bool
    labels: Tuple[str, ...]
    forms: Tuple[Dict[object, object], ...]
    unknowns: Tuple[object, ...]

    def matrix(self) -> Tuple[List[list], list]:
        a = [[_field(f.get(u, 0)) for u in self.unknowns] for f in self.forms]
        b = [-_field(f.get("const", 0)) for f in self.forms]
        return a, b

    def determinant(self):
        return det(self.matrix()[0])

    def solve(self) -> Dict[object, object]:
        a, b = self.matrix()
        try:
            x = solve_linear(a, b)
        except SingularSystemError as exc:
            raise SingularDesignError(f"{self.flavor} system of strength {self.strength} is singular") from exc
        return dict(zip(self.unknowns, x))


def _field(x):
    return x if isinstance(x, RatFunc) else RatFunc(x)


def _trace_form(t: TraceExpr) -> Dict[object, object]:
    form: Dict[object, object] = {"const": t.beta}
    form.update(t.alpha)
    return form


def _split_form(split: Dict[object, object]) -> Dict[object, object]:
    form: Dict[object, object] = {"const": split[1]}
    for l in EIGENVALUES:
        form[l] = split[l]
    return form


def build_system(flavor: str, strength: int, half: bool = False, c=None, e=None, h=None,
                 labels: Optional[Sequence[str]] = None) -> DesignSystem:
    """Assemble the trace identities for ``flavor`` in {"module", "V2"}.

    ``c``, ``e``, ``h`` default to symbols; ``labels`` overrides the vector
    choice from SYSTEM_VECTORS."""
    if flavor not in ("module", "V2"):
        raise ValueError("flavor must be 'module' or 'V2'")
    if labels is None:
        labels = SYSTEM_VECTORS[(flavor, strength, half)]
    vecs = design_vectors(c, None if half else e, half)
    forms = []
    for name in labels:
        v = vecs[name]
        if flavor == "module":
            t = trace_lowest(v, h=h, c=c, e=e, half=half)
        else:
            t = trace_V2(v, c=c, e=e, half=half)
        forms.append(_split_form(eigensplit(t, flavor)) if half else _trace_form(t))
    unknowns = EIGENVALUES if half else tuple(range(len(labels)))
    return DesignSystem(flavor, strength, half, tuple(labels), tuple(forms), unknowns)


def dimension_from(system: DesignSystem):
    """dim V_2 from the solution of a V_2 system."""
    sol = system.solve()
    if not system.half:
        return sol[0]
    # a_{-2}1 is the one eigenvalue-2 vector; b_{-2}1 is inside d_0
    return 1 + sum(sol[l] for l in EIGENVALUES)


# ---------------------------------------------------------------------------
# module conditions


@dataclass(frozen=True)
class Condition:
    determinant: object
    content: Fraction
    factors: Tuple[Tuple[MPoly, int], ...]
    denominator: Tuple[Tuple[MPoly, int], ...]

    @property
    def condition(self) -> MPoly:
        """Product of the numerator factors that involve both c and h."""
        out = CEH.const(1)
        for f, m in self.factors:
            if {"c", "h"} <= set(f.variables()):
                out = out * f ** m
        return out

    def factor_set(self) -> set:
        return {f for f, _ in self.factors}


def _condition(d) -> Condition:
    d = _field(d)
    content, num = poly_factor(d.numer)
    dcontent, den = poly_factor(d.denom) if not d.denom.is_constant() else (d.denom.to_rat(), [])
    return Condition(d, content / dcontent, tuple(num), tuple(den))


@lru_cache(maxsize=None)
def cond6_module(c=None, e=None) -> Condition:
    """Determinant of the homogeneous 4x4 system on a lowest space."""
    return _condition(build_system("module", 6, False, c, e).determinant())


@lru_cache(maxsize=None)
def cond6_module_half(c=None) -> Condition:
    """Determinant of the 3x3 eigenspace system with e = 1/2."""
    return _condition(build_system("module", 6, True, c).determinant())


@lru_cache(maxsize=None)
def cond8_module(half: bool = False) -> Condition:
    return _condition(build_system("module", 8, half).determinant())


def _univariate(p: MPoly, var: str) -> MPoly:
    extra = set(p.variables()) - {var}
    if extra:
        raise ValueError(f"polynomial still depends on {sorted(extra)}")
    return p


def condition_roots(condition: MPoly, h) -> List[object]:
    """Real roots in c of the condition at a fixed h.

    Rational roots are Fractions, quadratic ones QuadraticSurd, the rest
    IsolatedRoot intervals."""
    p = _univariate(condition.subs({"h": as_rat(h)}), "c")
    return real_roots(p)


@dataclass(frozen=True)
class IsolatedRoot:
    """A real root of an irreducible polynomial of degree >= 3, given by an
    isolating rational interval."""

    minpoly: MPoly
    lo: Fraction
    hi: Fraction

    def __str__(self) -> str:
        from .realroots import approx

        return f"~{approx((self.lo, self.hi))}"


def _root_key(r):
    if isinstance(r, Fraction):
        return r
    if isinstance(r, QuadraticSurd):
        lo, hi = r.interval()
        return (lo + hi) / 2
    return (r.lo + r.hi) / 2


def real_roots(p: MPoly) -> List[object]:
    """All real roots of a univariate polynomial, increasing."""
    _, facs = poly_factor(p)
    out: List[object] = []
    for f, _ in facs:
        deg = f.total_degree()
        if deg == 1:
            t = f.terms
            var = f.variables()[0]
            idx = f.ring.names.index(var)
            lin = next(x for m, x in t.items() if m[idx] == 1)
            const = next((x for m, x in t.items() if m[idx] == 0), Fraction(0))
            out.append(-const / lin)
        elif deg == 2:
            coeffs = to_fmpq_poly(f).coeffs()
            a, b, c0 = (Fraction(int(x.p), int(x.q)) for x in reversed(coeffs))
            try:
                out.extend(quadratic_roots(a, b, c0))
            except ValueError:
                pass
        else:
            for lo, hi in isolate_real_roots(f):
                out.append(IsolatedRoot(f, lo, hi))
    return sorted(out, key=_root_key)


# ---------------------------------------------------------------------------
# dim V_2


@lru_cache(maxsize=None)
def cond6_V2(c=None, e=None, half: bool = False):
    """dim V_2 forced by the 6-design identities."""
    return dimension_from(build_system("V2", 6, half, c, e))


@lru_cache(maxsize=None)
def cond8_V2(c=None, e=None, half: bool = False):
    """dim V_2 forced by the 8-design identities."""
    return dimension_from(build_system("V2", 8, half, c, e))


def d6(c) -> Fraction:
    """dim V_2 of a 6-design at a rational c, from the symbolic solution."""
    return cond6_V2().subs({"c": as_rat(c)}).to_rat()


def intersection_roots(half: bool = False) -> List[object]:
    """Real c where the 6- and 8-design values of dim V_2 agree."""
    diff = cond6_V2(half=half) - cond8_V2(half=half)
    return real_roots(_univariate(diff.numer, "c"))


def c36_exclusion(c=Fraction(36), e=Fraction(3)) -> Fraction:
    """dim V_2 from {v2, v4, v6a, v8a, v8b} at c = 36."""
    system = build_system("V2", 8, False, Fraction(c), Fraction(e), labels=("v2", "v4", "v6a", "v8a", "v8b"))
    return as_rat(dimension_from(system))


def eigenspace_fractions(c, h, labels: Sequence[str] = ("v2", "v4", "v6")) -> Dict[Fraction, Fraction]:
    """Dimensions of the a_0 eigenspaces on W_h as fractions of dim W_h,
    at a point (c, h) where the half-branch module system is singular."""
    system = build_system("module", 6, True, Fraction(c), h=Fraction(h), labels=tuple(labels))
    a, _ = system.matrix()
    kernel = nullspace([[as_rat(x) for x in row] for row in a])
    if len(kernel) != 1:
        raise SingularDesignError(f"expected a one-dimensional solution space, got {len(kernel)}")
    vec = kernel[0]
    total = sum(vec, Fraction(0))
    return {l: x / total for l, x in zip(system.unknowns, vec)}


def two_fermion_solutions(h=HALF) -> int:
    """Dimension of the solution space for (d_0, d_1/2) when c = 1 splits as
    1/2 + 1/2, so that d_1/16 = 0 and only v2, v4 are available."""
    one, h = Fraction(1), Fraction(h)
    rows = []
    for n in (2, 4):
        v = hw_solve(n, c=one, half=True)[0]
        split = eigensplit(trace_lowest(v, h=h, c=one, half=True), "module")
        rows.append([as_rat(split[l]) for l in EIGENVALUES[:2]])
    return len(nullspace(rows))


# ---------------------------------------------------------------------------
# conformal weights


def h_quadratic(c) -> Tuple[Fraction, Fraction, Fraction]:
    """Coefficients (A, B, C) of the 6-design condition A h^2 + B h + C at c."""
    cond = cond6_module().condition.subs({"c": as_rat(c)})
    coeffs = [Fraction(0)] * 3
    idx = CEH.names.index("h")
    for mono, x in cond.terms.items():
        coeffs[2 - mono[idx]] += x
    return tuple(coeffs)


def solve_h6(c) -> Tuple[object, object]:
    """Both conformal weights allowed at central charge c, smaller first."""
    return quadratic_roots(*h_quadratic(c))


def rational_h_filter(cands: Sequence) -> List[Fraction]:
    """Central charges whose allowed conformal weights are rational."""
    out = []
    for c in cands:
        c = c[0] if isinstance(c, tuple) else c
        try:
            roots = solve_h6(c)
        except ValueError:
            continue
        if all(isinstance(r, Fraction) for r in roots):
            out.append(Fraction(c))
    return out


# ---------------------------------------------------------------------------
# the Diophantine scan


@dataclass(frozen=True)
class ScanForm:
    """dim V_2 at c = k/den written as 2 d = L(k) + R(k)/D(k) with integer
    polynomials, L linear, R of lower degree than D."""

    den: int
    lin: Tuple[int, int]
    rem: Tuple[int, ...]
    quad: Tuple[int, ...]

    def bound(self) -> int:
        """Largest k where |R(k)| >= |D(k)| can still hold."""
        k = flint.fmpq_poly([0, 1])
        rp = sum((x * k ** i for i, x in enumerate(self.rem)), flint.fmpq_poly([0]))
        dp = sum((x * k ** i for i, x in enumerate(self.quad)), flint.fmpq_poly([0]))
        top = 0
        for p in (dp - rp, dp + rp):
            for lo, hi in isolate_real_roots(p):
                top = max(top, math.floor(hi))
        return top


@lru_cache(maxsize=None)
def scan_form(den: int = 70) -> ScanForm:
    d = cond6_V2()
    num = to_fmpq_poly(d.numer)
    dd = to_fmpq_poly(d.denom)
    # substitute c = k / den
    k = flint.fmpq_poly([0, flint.fmpq(1, den)])
    num, dd = num(k), dd(k)
    q, r = divmod(2 * num, dd)
    lc = math.lcm(*(int(x.q) for x in dd.coeffs() + r.coeffs()))
    dd, r = dd * lc, r * lc
    g = math.gcd(*(int(x.p) for x in dd.coeffs() + r.coeffs()))
    dd, r = dd / g, r / g
    lin = q.coeffs()
    if len(lin) != 2 or any(x.q != 1 for x in lin):
        raise ArithmeticError("unexpected quotient in the scan form")
    return ScanForm(den, tuple(int(x.p) for x in lin), tuple(int(x.p) for x in r.coeffs()),
                    tuple(int(x.p) for x in dd.coeffs()))


def _poly_np(coeffs: Sequence[int], k: np.ndarray) -> np.ndarray:
    out = np.zeros_like(k)
    for x in reversed(coeffs):
        out = out * k + x
    return out


def _scan_chunk(args) -> List[int]:
    form, lo, hi = args
    k = np.arange(lo, hi, dtype=np.int64)
    D = _poly_np(form.quad, k)
    R = _poly_np(form.rem, k)
    nz = D != 0
    hits = np.zeros_like(nz)
    hits[nz] = R[nz] % D[nz] == 0
    cand = k[hits]
    return [int(x) for x in cand]


def diophant_scan(kmax: Optional[int] = None, chunk: int = 1 << 20, workers: int = 1) -> List[Tuple[Fraction, int]]:
    """All positive rational c with dim V_2 a positive integer, with d.

    Writing c = p/q in lowest terms, q divides 70, so c = k/70 and
    2 d = L(k) + R(k)/D(k); past ``ScanForm.bound`` the fraction has
    absolute value below 1 and is never zero, so d is never integral."""
    form = scan_form()
    if kmax is None:
        kmax = form.bound()
    # int64 headroom for the largest |R| and |D| in range
    peak = max(abs(sum(x * kmax ** i for i, x in enumerate(p))) for p in (form.rem, form.quad))
    if peak >= 2 ** 62:
        raise OverflowError("scan range exceeds int64 headroom")
    jobs = [(form, lo, min(lo + chunk, kmax + 1)) for lo in range(1, kmax + 1, chunk)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_chunk, jobs))
    else:
        parts = [_scan_chunk(j) for j in jobs]
    out = []
    for k in sorted(x for part in parts for x in part):
        c = Fraction(k, form.den)
        d = d6(c)
        if d > 0 and d.denominator == 1:
            out.append((c, int(d)))
    return out


# ---------------------------------------------------------------------------
# the candidate table


@dataclass(frozen=True)
class Rule:
    name: str
    reason: str
    keep: Callable[[Fraction], bool]


# A self-dual VOA has c divisible by 8; at c = 8 and 16 every self-dual VOA
# has dim V_1 = 248 or 496, so its minimal weight is 1, not 2.
SELF_DUAL_RULES: Tuple[Rule, ...] = (
    Rule("c in 8Z", "central charge of a self-dual VOA is a multiple of 8",
         lambda c: c.denominator == 1 and c.numerator % 8 == 0),
    Rule("c not in {8, 16}", "self-dual VOAs at c = 8, 16 have V_1 != 0",
         lambda c: c not in (8, 16)),
)

# Without self-duality a module of weight h exists and h must be rational;
# c = 1/2 forces V = L(1/2, 0), which has nothing in degree 2.
NON_SELF_DUAL_RULES: Tuple[Rule, ...] = (
    Rule("h rational", "conformal weights of a rational VOA are rational",
         lambda c: all(isinstance(r, Fraction) for r in solve_h6(c))),
    Rule("c != 1/2", "at c = 1/2 the VOA is the minimal model with V_2 = 0",
         lambda c: c != HALF),
)


@dataclass(frozen=True)
class CandidateRow:
    c: Fraction
    d: int
    h: Optional[Tuple[Fraction, Fraction]]


def _passes(c: Fraction, rules: Sequence[Rule]) -> bool:
    try:
        return all(rule.keep(c) for rule in rules)
    except ValueError:
        return False


def table1(scan: Optional[Sequence[Tuple[Fraction, int]]] = None) -> List[CandidateRow]:
    """Possible (c, dim V_2, h) for a 6-design V_2 with V_1 = 0."""
    if scan is None:
        scan = diophant_scan()
    rows = []
    for c, d in scan:
        if _passes(c, NON_SELF_DUAL_RULES):
            rows.append(CandidateRow(c, d, tuple(solve_h6(c))))
        elif _passes(c, SELF_DUAL_RULES):
            rows.append(CandidateRow(c, d, None))
    return sorted(rows, key=lambda r: r.c)


def table1_markdown(rows: Sequence[CandidateRow]) -> str:
    def cell(x):
        return str(x)

    head = "| c | " + " | ".join(cell(r.c) for r in rows) + " |"
    sep = "|---|" + "---|" * len(rows)
    dim = "| dim V_2 | " + " | ".join(str(r.d) for r in rows) + " |"
    hs = "| h | " + " | ".join("-" if r.h is None else f"{r.h[0]}, {r.h[1]}" for r in rows) + " |"
    return "\n".join([head, sep, dim, hs]) + "\n"


# ---------------------------------------------------------------------------
# e = 1/2 feasibility


@dataclass(frozen=True)
class FermionRow:
    c: Fraction
    d0: Fraction
    d_half: Fraction
    d_sixteenth: Fraction

    @property
    def feasible(self) -> bool:
        return all(x >= 0 and x.denominator == 1 for x in (self.d0, self.d_half, self.d_sixteenth))


@lru_cache(maxsize=None)
def _fermion_solution():
    return build_system("V2", 6, True).solve()


def fermion_split(c) -> FermionRow:
    """Eigenspace dimensions of a_0 on V_2 (besides a_{-2}1) when an Ising
    vector of central charge 1/2 is present."""
    c = Fraction(c)
    sol = _fermion_solution()
    try:
        vals = [sol[l].subs({"c": c}).to_rat() for l in EIGENVALUES]
    except ZeroDivisionError:
        sol = build_system("V2", 6, True, c).solve()
        vals = [as_rat(sol[l]) for l in EIGENVALUES]
    return FermionRow(c, *vals)


def fermion_feasibility_scan(cands: Optional[Sequence] = None) -> List[FermionRow]:
    if cands is None:
        cands = [c for c, _ in diophant_scan()]
    return [fermion_split(c[0] if isinstance(c, tuple) else c) for c in cands]
