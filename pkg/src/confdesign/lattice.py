"""Lattice shells and spherical design strength.

Vectors are integer coordinate vectors in a lattice basis with Gram matrix
G, so the Euclidean Laplacian becomes sum (G^-1)_{ij} d_i d_j and |x|^2 is
x^T G x.  Everything is exact; numpy only accumulates integer moment sums.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import flint
import numpy as np

from .exact import nullspace
from .qforms import QSeries
from .rootsys import HarmonicPoly, laplacian_terms

Matrix = Tuple[Tuple[Fraction, ...], ...]
IntVec = Tuple[int, ...]
Monomial = Tuple[int, ...]

# above this many monomials a degree is probed rather than checked in full
FULL_CHECK_LIMIT = 2000


class DomainError(ValueError):
    pass


def _ldl(gram: Matrix) -> Tuple[List[Fraction], List[List[Fraction]]]:
    """Q(x) = sum_i d[i] (x_i + sum_{j>i} mu[i][j] x_j)^2.  The pivots d[i]
    are ratios of consecutive leading principal minors."""
    n = len(gram)
    a = [list(row) for row in gram]
    d: List[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d.append(a[i][i])
        if d[i] <= 0:
            raise DomainError(f"Gram matrix is not positive definite (leading minor {i + 1})")
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / d[i]
        for k in range(i + 1, n):
            for m in range(k, n):
                a[k][m] -= d[i] * mu[i][k] * mu[i][m]
                a[m][k] = a[k][m]
    return d, mu


def _inverse(gram: Matrix) -> Matrix:
    n = len(gram)
    m = flint.fmpq_mat([[flint.fmpq(x.numerator, x.denominator) for x in row] for row in gram]).inv()
    return tuple(tuple(Fraction(int(m[i, j].p), int(m[i, j].q)) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class Lattice:
    gram: Matrix
    name: str = ""

    def __post_init__(self):
        g = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise DomainError("Gram matrix is not square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise DomainError("Gram matrix is not symmetric")
        _ldl(g)

    @property
    def dim(self) -> int:
        return len(self.gram)

    @property
    def metric(self) -> Matrix:
        """Inverse Gram matrix, the Laplacian metric in lattice coordinates."""
        return _inverse(self.gram)

    def norm(self, x: Sequence[int]) -> Fraction:
        g = self.gram
        return sum((g[i][j] * x[i] * x[j] for i in range(self.dim) for j in range(self.dim)), Fraction(0))

    def determinant(self) -> Fraction:
        d, _ = _ldl(self.gram)
        return math.prod(d)

    def is_even(self) -> bool:
        g = self.gram
        return (all(x.denominator == 1 for row in g for x in row)
                and all(g[i][i] % 2 == 0 for i in range(self.dim)))

    def transform(self, u: Sequence[Sequence[int]], name: Optional[str] = None) -> "Lattice":
        """Same lattice in the basis given by the rows of the unimodular u."""
        n = self.dim
        g = self.gram
        new = [[sum(u[i][k] * g[k][l] * u[j][l] for k in range(n) for l in range(n))
                for j in range(n)] for i in range(n)]
        return Lattice(tuple(map(tuple, new)), name or self.name)


# --- text format ---------------------------------------------------------

def parse_gram(text: str, name: str = "") -> Lattice:
    """Dimension on the first line, then one row per line; entries may be
    written as fractions.  Lines starting with # are ignored."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise DomainError("empty Gram file")
    n = int(lines[0])
    rows = [tuple(Fraction(x) for x in ln.split()) for ln in lines[1:]]
    if len(rows) != n:
        raise DomainError(f"expected {n} rows, found {len(rows)}")
    return Lattice(tuple(rows), name)


def format_gram(lat: Lattice) -> str:
    out = [f"# {lat.name}" if lat.name else "", str(lat.dim)]
    out += [" ".join(str(x) for x in row) for row in lat.gram]
    return "\n".join(x for x in out if x) + "\n"


def load_gram(path: Union[str, Path]) -> Lattice:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror}") from exc
    return parse_gram(text, path.stem)


BUNDLED = ("A1", "E8", "D16plus", "BW16")


def bundled_lattice(name: str) -> Lattice:
    if name not in BUNDLED:
        raise DomainError(f"no bundled lattice {name!r}; have {', '.join(BUNDLED)}")
    text = resources.files("confdesign").joinpath("data").joinpath(f"{name}.gram").read_text()
    return parse_gram(text, name)


def gram_from_generators(gens: Sequence[Sequence[int]], scale: Fraction = Fraction(1)) -> Lattice:
    """Lattice spanned by integer generators, inner product scale * (x . y).
    A basis comes from the Hermite normal form of the generator matrix,
    LLL-reduced so that shell enumeration stays cheap."""
    h = flint.fmpz_mat([list(map(int, g)) for g in gens]).hnf()
    basis = [[int(h[i, j]) for j in range(h.ncols())] for i in range(h.nrows())]
    basis = [b for b in basis if any(b)]
    red = flint.fmpz_mat(basis).lll()
    basis = [[int(red[i, j]) for j in range(red.ncols())] for i in range(red.nrows())]
    gram = tuple(tuple(Fraction(sum(x * y for x, y in zip(a, b))) * scale for b in basis) for a in basis)
    return Lattice(gram)


# --- shells --------------------------------------------------------------

@dataclass(frozen=True)
class Shell:
    lattice: Lattice
    norm: Fraction
    vectors: Tuple[IntVec, ...]

    def __post_init__(self):
        vs = set(self.vectors)
        if any(self.lattice.norm(v) != self.norm for v in self.vectors):
            raise ValueError("vector of the wrong norm in shell")
        if any(tuple(-x for x in v) not in vs for v in vs):
            raise ValueError("shell not closed under negation")

    def __len__(self):
        return len(self.vectors)


def _interval(c: Fraction, u: Fraction) -> Tuple[int, int]:
    """Integers t with (t + c)^2 <= u, as an inclusive range (maybe empty)."""
    if u < 0:
        return 1, 0
    r = math.sqrt(float(u))
    hi = math.floor(float(-c) + r) + 1
    while (hi + c) ** 2 > u and hi + c > 0:
        hi -= 1
    lo = math.ceil(float(-c) - r) - 1
    while (lo + c) ** 2 > u and lo + c < 0:
        lo += 1
    return lo, hi


def _enumerate(d, mu, bound: Fraction, fixed: Dict[int, int]) -> List[IntVec]:
    n = len(d)
    out: List[IntVec] = []
    x = [0] * n
    for k, v in fixed.items():
        x[k] = v

    def rec(i: int, remaining: Fraction):
        if i < 0:
            out.append(tuple(x))
            return
        c = sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        if i in fixed:
            rest = remaining - d[i] * (x[i] + c) ** 2
            if rest >= 0:
                rec(i - 1, rest)
            return
        lo, hi = _interval(c, remaining / d[i])
        for t in range(lo, hi + 1):
            x[i] = t
            rest = remaining - d[i] * (t + c) ** 2
            if rest >= 0:
                rec(i - 1, rest)
        x[i] = 0

    rec(n - 1, bound)
    return out


def _slice_job(args):
    d, mu, bound, last = args
    return _enumerate(d, mu, bound, {len(d) - 1: last})


def short_vectors(lat: Lattice, bound, workers: int = 1) -> List[IntVec]:
    """All x with x^T G x <= bound, sorted.  With workers > 1 the search is
    split over the values of the last coordinate."""
    bound = Fraction(bound)
    if bound < 0:
        raise DomainError("norm must be non-negative")
    d, mu = _ldl(lat.gram)
    if workers <= 1:
        return sorted(_enumerate(d, mu, bound, {}))
    lo, hi = _interval(Fraction(0), bound / d[-1])
    jobs = [(d, mu, bound, t) for t in range(lo, hi + 1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_slice_job, jobs))
    return sorted(v for part in parts for v in part)


def shell_enum(lat: Lattice, norm, workers: int = 1) -> Shell:
    norm = Fraction(norm)
    vecs = [v for v in short_vectors(lat, norm, workers) if lat.norm(v) == norm]
    return Shell(lat, norm, tuple(vecs))


# --- harmonic polynomials ------------------------------------------------

def monomials(nvars: int, degree: int) -> List[Monomial]:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        m = [0] * nvars
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    return sorted(out, reverse=True)


def harm_basis(dim: int, degree: int, metric: Optional[Matrix] = None) -> List[HarmonicPoly]:
    """Basis of the harmonic polynomials of the given degree: the kernel of
    the Laplacian from Hom(degree) to Hom(degree - 2), in the RREF basis."""
    if degree < 0:
        raise DomainError("degree must be non-negative")
    cols = monomials(dim, degree)
    rows_index = {m: i for i, m in enumerate(monomials(dim, degree - 2))} if degree >= 2 else {}
    if not rows_index:
        return [HarmonicPoly(dim, {m: Fraction(1)}, metric) for m in cols]
    mat = [[Fraction(0)] * len(cols) for _ in rows_index]
    for j, m in enumerate(cols):
        for mm, c in laplacian_terms({m: Fraction(1)}, dim, metric).items():
            mat[rows_index[mm]][j] += c
    return [HarmonicPoly(dim, dict(zip(cols, vec)), metric) for vec in nullspace(mat, len(cols))]


def harmonic_projection(terms: Dict[Monomial, Fraction], dim: int, degree: int,
                        gram: Optional[Matrix] = None) -> Dict[int, Dict[Monomial, Fraction]]:
    """Harmonic part of a homogeneous polynomial p, as the layers
    {j: a_j * Lap^j p} of  h = sum_j a_j |x|^{2j} Lap^j p.

    a_0 = 1 and a_{j+1} = -a_j / (2 (j+1) (dim + 2 degree - 2j - 4)) make
    Lap h vanish; the same recursion holds for any metric since only
    Lap|x|^2 = 2 dim and the Euler identity enter."""
    metric = None if gram is None else _inverse(gram)
    layers = {0: dict(terms)}
    a = Fraction(1)
    cur = dict(terms)
    j = 0
    while True:
        cur = laplacian_terms(cur, dim, metric)
        if not cur:
            break
        a = -a / (2 * (j + 1) * (dim + 2 * degree - 2 * j - 4))
        j += 1
        layers[j] = {m: a * c for m, c in cur.items()}
    return layers


def expand_layers(layers: Dict[int, Dict[Monomial, Fraction]], dim: int,
                  gram: Optional[Matrix] = None) -> Dict[Monomial, Fraction]:
    """Sum of |x|^{2j} * layer_j as an explicit polynomial."""
    g = gram or tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim))
    sq: Dict[Monomial, Fraction] = {}
    for i in range(dim):
        for k in range(dim):
            if g[i][k]:
                m = tuple((i == t) + (k == t) for t in range(dim))
                sq[m] = sq.get(m, 0) + g[i][k]
    from .rootsys import poly_mul

    total: Dict[Monomial, Fraction] = {}
    power = {(0,) * dim: Fraction(1)}
    for j in range(max(layers) + 1):
        if j:
            power = poly_mul(power, sq)
        for m, c in poly_mul(power, layers.get(j, {})).items():
            v = total.get(m, 0) + c
            if v:
                total[m] = v
            else:
                total.pop(m, None)
    return total


# --- moment sums ---------------------------------------------------------

class MomentTable:
    """Exact sums over a shell of all monomials up to a degree."""

    def __init__(self, vectors: Sequence[IntVec]):
        self.x = np.array(vectors, dtype=np.int64)
        self.maxabs = int(np.abs(self.x).max()) if len(vectors) else 0
        self._cache: Dict[Monomial, int] = {}

    def __call__(self, mono: Monomial) -> int:
        val = self._cache.get(mono)
        if val is None:
            deg = sum(mono)
            if self.maxabs ** deg * len(self.x) >= 2 ** 62:
                cols = [[int(v) for v in col] for col in self.x.T]
                val = sum(math.prod(cols[i][r] ** k for i, k in enumerate(mono) if k)
                          for r in range(len(self.x)))
            else:
                prod = np.ones(len(self.x), dtype=np.int64)
                for i, k in enumerate(mono):
                    if k:
                        prod *= self.x[:, i] ** k
                val = int(prod.sum())
            self._cache[mono] = val
        return val

    def pair(self, terms: Dict[Monomial, Fraction]) -> Fraction:
        return sum((c * self(m) for m, c in terms.items()), Fraction(0))


def projected_sum(layers, norm: Fraction, moments: MomentTable) -> Fraction:
    """Sum over a shell of constant norm of the harmonic part."""
    return sum((norm ** j * moments.pair(layer) for j, layer in layers.items()), Fraction(0))


@dataclass
class DegreeCheck:
    degree: int
    method: str  # "odd", "full", "probe", "gram"
    vanishes: bool
    witness: Optional[Tuple[Monomial, ...]] = None
    value: Optional[Fraction] = None


@dataclass
class DesignReport:
    strength: int
    tmax: int
    checks: List[DegreeCheck] = field(default_factory=list)


def _gram_criterion(shell: Shell, degree: int) -> bool:
    """Antipodal X of norm N is a (2k+1)-design iff
    sum_{x,y} (x,y)^{2k} = |X|^2 N^{2k} (2k-1)!! / (n (n+2) ... (n+2k-2)).
    Used where the harmonic space is too large to span."""
    n = shell.lattice.dim
    k = degree // 2
    gram = shell.lattice.gram
    den = math.lcm(*(x.denominator for row in gram for x in row))
    gi = np.array([[int(x * den) for x in row] for row in gram], dtype=np.int64)
    x = np.array(shell.vectors, dtype=np.int64)
    ip = x @ gi @ x.T  # den * (x, y)
    values, counts = np.unique(ip, return_counts=True)
    total = sum(int(v) ** (2 * k) * int(m) for v, m in zip(values, counts))
    lhs = Fraction(total, den ** (2 * k))
    c = Fraction(math.prod(range(1, 2 * k, 2)), math.prod(n + 2 * i for i in range(k)))
    return lhs == len(shell) ** 2 * shell.norm ** (2 * k) * c


def design_report(shell: Shell, tmax: int, probes: int = 20, seed: int = 0) -> DesignReport:
    """Degree-by-degree check that all harmonic sums vanish.

    Odd degrees vanish by negation symmetry.  An even degree is checked on
    the harmonic parts of all monomials when there are at most
    FULL_CHECK_LIMIT of them.  Otherwise random integer combinations are
    probed; one nonzero sum settles the degree, and if all probes vanish the
    degree is certified by the inner-product criterion instead.
    """
    if not shell.vectors:
        raise DomainError("empty shell")
    dim = shell.lattice.dim
    gram = shell.lattice.gram
    moments = MomentTable(shell.vectors)
    rng = random.Random(seed)
    report = DesignReport(0, tmax)
    for s in range(1, tmax + 1):
        if s % 2:
            check = DegreeCheck(s, "odd", True)
        else:
            monos = monomials(dim, s)
            check = None
            if len(monos) <= FULL_CHECK_LIMIT:
                check = DegreeCheck(s, "full", True)
                for m in monos:
                    val = projected_sum(harmonic_projection({m: Fraction(1)}, dim, s, gram),
                                        shell.norm, moments)
                    if val:
                        check = DegreeCheck(s, "full", False, (m,), val)
                        break
            else:
                for _ in range(probes):
                    pick = tuple(rng.sample(monos, 3))
                    terms = {m: Fraction(rng.randint(1, 9)) for m in pick}
                    val = projected_sum(harmonic_projection(terms, dim, s, gram), shell.norm, moments)
                    if val:
                        check = DegreeCheck(s, "probe", False, pick, val)
                        break
                if check is None:
                    check = DegreeCheck(s, "gram", _gram_criterion(shell, s))
        report.checks.append(check)
        if not check.vanishes:
            break
        report.strength = s
    return report


def design_strength(shell: Shell, tmax: int, **kw) -> int:
    """Largest t <= tmax such that every harmonic polynomial of degree
    1..t sums to zero over the shell."""
    if tmax < 1:
        raise DomainError("tmax must be positive")
    return design_report(shell, tmax, **kw).strength


def harmonic_theta(lat: Lattice, P: HarmonicPoly, N: int, workers: int = 1) -> QSeries:
    """sum_x P(x) q^{(x,x)/2} through q^N for an even lattice.  P must be
    harmonic for the lattice metric."""
    if not lat.is_even():
        raise DomainError("theta numerators here need an even lattice")
    if P.nvars != lat.dim:
        raise DomainError("polynomial and lattice dimensions differ")
    metric = lat.metric
    if laplacian_terms(P.terms, lat.dim, metric):
        raise DomainError("polynomial is not harmonic for this lattice")
    coeffs = [Fraction(0)] * (N + 1)
    for v in short_vectors(lat, 2 * N, workers):
        coeffs[int(lat.norm(v)) // 2] += P(v)
    return QSeries.from_list(coeffs)


def constant_poly(dim: int) -> HarmonicPoly:
    return HarmonicPoly(dim, {(0,) * dim: Fraction(1)})


def random_unimodular(n: int, rng: random.Random, steps: int = 12) -> List[List[int]]:
    """Product of elementary row operations and sign flips."""
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.choice((-2, -1, 1, 2))
        u[i] = [a + k * b for a, b in zip(u[i], u[j])]
    for i in range(n):
        if rng.random() < 0.3:
            u[i] = [-a for a in u[i]]
    return u


def iter_norms(lat: Lattice, norms: Iterable, workers: int = 1) -> Dict[Fraction, Shell]:
    norms = sorted(Fraction(x) for x in norms)
    vecs = short_vectors(lat, norms[-1], workers)
    by = {nm: [] for nm in norms}
    for v in vecs:
        nv = lat.norm(v)
        if nv in by:
            by[nv].append(v)
    return {nm: Shell(lat, nm, tuple(vs)) for nm, vs in by.items()}


__all__ = [
    "DomainError", "Lattice", "Shell", "DesignReport", "DegreeCheck", "MomentTable",
    "parse_gram", "format_gram", "load_gram", "bundled_lattice", "gram_from_generators",
    "short_vectors", "shell_enum", "iter_norms", "monomials", "harm_basis",
    "harmonic_projection", "expand_layers", "projected_sum", "design_report",
    "design_strength", "harmonic_theta", "constant_poly", "random_unimodular", "BUNDLED",
]
