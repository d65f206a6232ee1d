"""Virasoro modules in the PBW basis.

Vectors are plain dicts mapping basis keys to coefficients.  A Verma-module
key is a partition ``(m1, ..., mk)`` with ``m1 >= ... >= mk >= 1`` standing
for ``L_{-m1} ... L_{-mk} v``.  A tensor-module key is a pair of partitions
``(lam, mu)`` for ``a_{-lam} b_{-mu} (v (x) v)``, where the ``a`` modes act on
the first factor and the ``b`` modes on the second.

Coefficients are whatever the charges and weights are made of: Fractions for
numeric work, :class:`~confdesign.exact.MPoly` for symbolic ``c, e, h``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exact import CEH, MPoly, RatFunc, as_rat, det, nullspace, poly_factor, rref, solve_linear

Partition = Tuple[int, ...]
Vector = Dict[object, object]


class DegenerateChargeError(ValueError):
    """The requested central charge makes a vacuum factor reducible."""


class BranchPointError(ValueError):
    """c = 1 is the branch point of the Kac parametrisation."""


# ---------------------------------------------------------------------------
# partitions


@lru_cache(maxsize=None)
def partitions(n: int, min_part: int = 1, max_part: Optional[int] = None) -> Tuple[Partition, ...]:
    """Partitions of n into parts in [min_part, max_part], weakly decreasing,
    listed in reverse lexicographic order (largest first part first)."""
    if n < 0:
        return ()
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(max_part, min_part - 1, -1):
        for rest in partitions(n - first, min_part, first):
            out.append((first,) + rest)
    return tuple(out)


def graded_dim(n: int, min_part: int = 1) -> int:
    return len(partitions(n, min_part))


# ---------------------------------------------------------------------------
# vector helpers


def vadd(u: Vector, v: Vector, scale=1) -> Vector:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        y = x * scale if y is None else y + x * scale
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vscale(v: Vector, s) -> Vector:
    if not s:
        return {}
    return {k: x * s for k, x in v.items()}


def _accumulate(out: Vector, key, value) -> None:
    y = out.get(key)
    y = value if y is None else y + value
    if y:
        out[key] = y
    else:
        out.pop(key, None)


# ---------------------------------------------------------------------------
# modules


class VermaModule:
    """Verma module M(c, h), or the vacuum quotient M(c, 0)/M(c, 1) when
    ``vacuum`` is true (then ``L_{-1} v = 0`` and parts are >= 2).

    ``charge`` and ``weight`` may be Fractions or polynomials."""

    def __init__(self, charge, weight=0, vacuum: bool = False):
        if vacuum and weight:
            raise ValueError("the vacuum quotient has weight 0")
        self.charge = charge
        self.weight = weight
        self.vacuum = vacuum
        self.min_part = 2 if vacuum else 1
        self._cache: Dict[Tuple[int, Partition], Vector] = {}
        self._twelfth = Fraction(1, 12)

    def basis(self, degree: int) -> Tuple[Partition, ...]:
        return partitions(degree, self.min_part)

    def dim(self, degree: int) -> int:
        return len(self.basis(degree))

    def act(self, n: int, vec: Vector) -> Vector:
        """L_n applied to a vector."""
        out: Vector = {}
        for lam, x in vec.items():
            for mu, y in self._act_mono(n, lam).items():
                _accumulate(out, mu, x * y)
        return out

    def act_word(self, word: Sequence[int], vec: Vector) -> Vector:
        """Apply L_{w[0]} L_{w[1]} ... (rightmost first)."""
        for n in reversed(word):
            vec = self.act(n, vec)
        return vec

    def pbw(self, lam: Partition) -> Vector:
        """The basis vector L_{-lam} v, reduced to normal form."""
        vec: Vector = {(): 1}
        for m in reversed(lam):
            vec = self.act(-m, vec)
        return vec

    def _act_mono(self, n: int, lam: Partition) -> Vector:
        key = (n, lam)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        res = self._compute(n, lam)
        self._cache[key] = res
        return res

    def _compute(self, n: int, lam: Partition) -> Vector:
        if n == 0:
            s = self.weight + sum(lam)
            return {lam: s} if s else {}
        if n < 0:
            p = -n
            if not lam:
                if p < self.min_part:
                    return {}
                return {(p,): 1}
            if p >= lam[0]:
                return {(p,) + lam: 1}
            # L_{-p} L_{-l} Y = L_{-l} L_{-p} Y + (l - p) L_{-p-l} Y
            l, rest = lam[0], lam[1:]
            out: Vector = {}
            for mu, x in self._act_mono(-p, rest).items():
                for nu, y in self._act_mono(-l, mu).items():
                    _accumulate(out, nu, x * y)
            for mu, x in self._act_mono(-p - l, rest).items():
                _accumulate(out, mu, (l - p) * x)
            return out
        if not lam or sum(lam) < n:
            return {}
        # L_n L_{-l} Y = L_{-l} L_n Y + (n + l) L_{n-l} Y + delta_{n,l} (n^3-n)/12 c Y
        l, rest = lam[0], lam[1:]
        out = {}
        for mu, x in self._act_mono(n, rest).items():
            for nu, y in self._act_mono(-l, mu).items():
                _accumulate(out, nu, x * y)
        for mu, x in self._act_mono(n - l, rest).items():
            _accumulate(out, mu, (n + l) * x)
        if n == l and n > 1:
            _accumulate(out, rest, self.charge * Fraction(n ** 3 - n, 12))
        return out


class QuotientModule(VermaModule):
    """A vacuum module divided by the submodule generated by a singular
    vector.  Vectors are kept reduced: each degree has a set of pivot
    monomials which never appear in a reduced vector."""

    def __init__(self, charge, singular: Vector, max_degree: int = 12):
        super().__init__(charge, 0, vacuum=True)
        self.singular = singular
        self.singular_degree = sum(next(iter(singular)))
        self.max_degree = max_degree
        self._reducers: Dict[int, Dict[Partition, Vector]] = {}

    def _reducer(self, d: int) -> Dict[Partition, Vector]:
        red = self._reducers.get(d)
        if red is not None:
            return red
        red = {}
        k = d - self.singular_degree
        if k >= 0:
            if d > self.max_degree:
                raise ValueError(f"quotient module only set up through degree {self.max_degree}")
            cols = list(super().basis(d))
            index = {lam: i for i, lam in enumerate(cols)}
            rows = []
            for mu in partitions(k, 1):
                vec = dict(self.singular)
                for m in reversed(mu):
                    vec = super().act(-m, vec)
                row = [Fraction(0)] * len(cols)
                for lam, x in vec.items():
                    row[index[lam]] = x
                rows.append(row)
            # pivots prefer monomials with many parts, then small parts
            order = sorted(range(len(cols)), key=lambda i: (-len(cols[i]), cols[i]))
            reduced, pivots = rref(rows, order)
            for row, p in zip(reduced, pivots):
                red[cols[p]] = {cols[j]: x for j, x in enumerate(row) if x and j != p}
        self._reducers[d] = red
        return red

    def reduce(self, vec: Vector) -> Vector:
        out: Vector = {}
        for lam, x in vec.items():
            red = self._reducer(sum(lam))
            tail = red.get(lam)
            if tail is None:
                _accumulate(out, lam, x)
            else:
                for mu, y in tail.items():
                    _accumulate(out, mu, -x * y)
        return out

    def basis(self, degree: int) -> Tuple[Partition, ...]:
        red = self._reducer(degree)
        return tuple(lam for lam in super().basis(degree) if lam not in red)

    def act(self, n: int, vec: Vector) -> Vector:
        return self.reduce(super().act(n, vec))


class TensorModule:
    """Tensor product A (x) B of two modules with diagonal Virasoro action
    L_n = a_n + b_n; the total central charge is the sum of the charges."""

    def __init__(self, a: VermaModule, b: VermaModule):
        self.a = a
        self.b = b

    @property
    def charge(self):
        return self.a.charge + self.b.charge

    def basis(self, degree: int) -> List[Tuple[Partition, Partition]]:
        out = []
        for i in range(degree, -1, -1):
            for lam in self.a.basis(i):
                for mu in self.b.basis(degree - i):
                    out.append((lam, mu))
        return out

    def act(self, slot: str, n: int, vec: Vector) -> Vector:
        """a_n (slot 'a') or b_n (slot 'b') applied to a tensor vector."""
        out: Vector = {}
        if slot == "a":
            groups: Dict[Partition, Vector] = {}
            for (lam, mu), x in vec.items():
                groups.setdefault(mu, {})[lam] = x
            for mu, part in groups.items():
                for lam, x in self.a.act(n, part).items():
                    _accumulate(out, (lam, mu), x)
        elif slot == "b":
            groups = {}
            for (lam, mu), x in vec.items():
                groups.setdefault(lam, {})[mu] = x
            for lam, part in groups.items():
                for mu, x in self.b.act(n, part).items():
                    _accumulate(out, (lam, mu), x)
        else:
            raise ValueError(f"unknown slot {slot!r}")
        return out

    def total(self, n: int, vec: Vector) -> Vector:
        return vadd(self.act("a", n, vec), self.act("b", n, vec))

    def apply_word(self, word: Sequence[Tuple[str, int]], vec: Vector) -> Vector:
        """Apply a word of (slot, n) letters, rightmost letter first."""
        for slot, n in reversed(word):
            if not vec:
                break
            vec = self.act(slot, n, vec)
        return vec


# ---------------------------------------------------------------------------
# the c = 1/2 vacuum singular vector and the tensor modules


def vacuum_singular_vector(charge, degree: int) -> List[Vector]:
    """Basis of singular vectors (killed by L_1, L_2) of the given degree in
    the vacuum module of the given charge."""
    mod = VermaModule(charge, 0, vacuum=True)
    cols = mod.basis(degree)
    rows = _image_rows(lambda k, v: mod.act(k, v), cols, lambda d: mod.basis(d), degree,
                       lambda lam: {lam: 1})
    ker = nullspace(rows, len(cols)) if rows else []
    return [{cols[i]: x for i, x in enumerate(v) if x} for v in ker]


@lru_cache(maxsize=None)
def half_singular_vector() -> Vector:
    """The degree-6 singular vector of the c = 1/2 vacuum module, scaled to
    have coprime integer coefficients with a positive coefficient on the
    monomial with most parts."""
    vecs = vacuum_singular_vector(Fraction(1, 2), 6)
    if len(vecs) != 1:
        raise AssertionError("expected a unique degree-6 singular vector at c = 1/2")
    v = vecs[0]
    den = math.lcm(*(Fraction(x).denominator for x in v.values()))
    ints = {k: int(Fraction(x) * den) for k, x in v.items()}
    g = math.gcd(*ints.values())
    lead = max(ints, key=lambda k: (len(k), [-p for p in k]))
    sign = 1 if ints[lead] > 0 else -1
    return {k: Fraction(sign * x // g) for k, x in ints.items()}


def ising_vacuum_module() -> QuotientModule:
    """L(1/2, 0) through degree 12."""
    return QuotientModule(Fraction(1, 2), half_singular_vector(), max_degree=12)


def symbols():
    """The symbolic c, e, h of the default polynomial ring."""
    return CEH.gens()


def tensor_vacuum(c=None, e=None, half: bool = False) -> TensorModule:
    """U_e (x) U_{c-e}.  ``None`` means symbolic.  With ``half`` the first
    factor is the irreducible c = 1/2 vacuum module."""
    cs, es, _ = symbols()
    c = cs if c is None else c
    if half:
        if e is not None and Fraction(e) != Fraction(1, 2):
            raise ValueError("half=True fixes e = 1/2")
        e = Fraction(1, 2)
        a = ising_vacuum_module()
    else:
        e = es if e is None else e
        a = VermaModule(e, 0, vacuum=True)
    b = VermaModule(c - e, 0, vacuum=True)
    return TensorModule(a, b)


def _image_rows(act, cols, target_basis, degree, make_vec):
    """Matrix rows of the map v -> (L_1 v, L_2 v) in the given column basis."""
    rows = []
    for k in (1, 2):
        if degree - k < 0:
            continue
        tgt = target_basis(degree - k)
        index = {t: i for i, t in enumerate(tgt)}
        block = [[0] * len(cols) for _ in tgt]
        for j, col in enumerate(cols):
            for t, x in act(k, make_vec(col)).items():
                block[index[t]][j] = x
        rows.extend(block)
    return rows


def _pure_b(key) -> bool:
    return not key[0]


def _column_order(cols) -> List[int]:
    """Pivot search order: mixed and pure-a monomials first, then pure-b
    monomials with those having fewer parts first.  Free variables therefore
    land on pure-b columns, the power of b_{-2} being preferred."""
    head = [i for i, k in enumerate(cols) if not _pure_b(k)]
    tail = sorted((i for i, k in enumerate(cols) if _pure_b(k)), key=lambda i: (len(cols[i][1]), cols[i][1]))
    return head + tail


def _to_field(x):
    if isinstance(x, MPoly):
        return RatFunc(x)
    return x if isinstance(x, (RatFunc, Fraction)) else Fraction(x)


def degenerate_charges(n: int) -> List[Fraction]:
    """Rational charges at which the vacuum module is reducible in degree <= n."""
    roots = set()
    for k in range(2, n + 1):
        _, facs = kac_det_vacuum(k)
        for f, _m in facs:
            if f.total_degree() == 1:
                t = f.terms
                a = t.get((1, 0, 0), Fraction(0))
                b = t.get((0, 0, 0), Fraction(0))
                roots.add(-b / a)
    return sorted(roots)


def hw_solve(n: int, c=None, e=None, half: bool = False, check: bool = True):
    """Basis of highest-weight vectors of degree n in U_e (x) U_{c-e}.

    The vectors are annihilated by L_1 and L_2 of the diagonal Virasoro
    algebra.  ``c``/``e`` left as ``None`` are symbolic; coefficients are
    then rational functions in c and e.  The basis is the RREF-canonical
    kernel basis rebased so that, for j below the kernel dimension, the j-th
    vector has coefficient 1 on a_{-2}^j b_{-2}^{n/2-j} and 0 on the others.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if check and not half:
        for name, val in (("e", e), ("c - e", None if (c is None or e is None) else Fraction(c) - Fraction(e))):
            if val is not None and Fraction(val) in degenerate_charges(max(n, 2)):
                raise DegenerateChargeError(f"{name} = {val} makes a vacuum factor reducible")
    if check and half and c is not None:
        if Fraction(c) - Fraction(1, 2) in degenerate_charges(max(n, 2)):
            raise DegenerateChargeError(f"c - 1/2 = {Fraction(c) - Fraction(1, 2)} is degenerate")
    mod = tensor_vacuum(c, e, half)
    cols = mod.basis(n)
    if not cols:
        return []
    rows = _image_rows(lambda k, v: mod.total(k, v), cols, mod.basis, n, lambda key: {key: 1})
    rows = [[_to_field(x) for x in r] for r in rows]
    symbolic = any(isinstance(x, RatFunc) for r in rows for x in r) or c is None or (e is None and not half)
    one = RatFunc(1) if symbolic else Fraction(1)
    if rows:
        ker = nullspace(rows, len(cols), _column_order(cols), one=one)
    else:
        ker = [[one if i == j else one * 0 for j in range(len(cols))] for i in range(len(cols))]
    out = []
    for v in ker:
        vec = {cols[i]: (RatFunc(x) if symbolic and not isinstance(x, RatFunc) else x)
               for i, x in enumerate(v) if x}
        out.append(vec)
    return _normalize_basis(out, n, one)


def _normalize_basis(vecs, n, one):
    """Rebase so the coefficients on a_{-2}^j b_{-2}^{n/2-j}, j < dim, form
    the identity matrix.  Falls back to the RREF basis when that minor is
    singular (odd n, or special charges)."""
    if not vecs or n % 2:
        return vecs
    k = len(vecs)
    keys = [((2,) * j, (2,) * (n // 2 - j)) for j in range(k)]
    zero = one * 0
    m = [[v.get(key, zero) for key in keys] for v in vecs]
    if not det(m):
        return vecs
    # new_j = sum_i inv[j][i] vecs_i where inv = m^{-1} transposed suitably:
    # coefficients of new_j on keys must be e_j, i.e. solve m^T x = e_j
    mt = [[m[i][j] for i in range(k)] for j in range(k)]
    out = []
    for j in range(k):
        rhs = [one if i == j else zero for i in range(k)]
        x = solve_linear(mt, rhs)
        vec: Vector = {}
        for i in range(k):
            if x[i]:
                for key, y in vecs[i].items():
                    _accumulate(vec, key, x[i] * y)
        out.append(vec)
    return out


# ---------------------------------------------------------------------------
# Gram matrices and Kac determinants


def gram_matrix(mod: VermaModule, degree: int):
    """Shapovalov form on the given degree: <L_{-lam} v, L_{-mu} v>."""
    basis = mod.basis(degree)
    rows = []
    for lam in basis:
        row = []
        for mu in basis:
            vec = {mu: 1}
            for m in lam:
                vec = mod.act(m, vec)
            row.append(vec.get((), 0))
        rows.append(row)
    return rows


@lru_cache(maxsize=None)
def kac_det_vacuum(n: int):
    """Factorisation (content, [(factor, multiplicity)]) of the Gram
    determinant of the vacuum module in degree n, as a polynomial in c."""
    c = CEH.gen("c")
    mod = VermaModule(c, 0, vacuum=True)
    g = gram_matrix(mod, n)
    if not g:
        return Fraction(1), []
    d = det(g)
    p = d.to_poly() if isinstance(d, RatFunc) else CEH.const(d)
    if not p:
        raise ArithmeticError("vacuum Gram determinant vanishes identically")
    return poly_factor(p)


@dataclass(frozen=True)
class KacWeight:
    """h_{p,q}(c) on one branch of m(c) = -1/2 + s/2 sqrt((25-c)/(1-c)),
    s = +1 or -1, with c = 1 - 6/(m(m+1))."""

    p: int
    q: int
    branch: int = 1

    def m(self, c) -> Fraction:
        c = Fraction(c)
        if c == 1:
            raise BranchPointError("c = 1 is the branch point of the Kac parametrisation")
        r = (25 - c) / (1 - c)
        root = _rational_sqrt(r)
        if root is None:
            raise ValueError(f"(25-c)/(1-c) = {r} is not a rational square")
        return Fraction(-1, 2) + self.branch * root / 2

    def __call__(self, c) -> Fraction:
        m = self.m(c)
        return (((m + 1) * self.p - m * self.q) ** 2 - 1) / (4 * m * (m + 1))


def hpq(p: int, q: int) -> Tuple[KacWeight, KacWeight]:
    """The two branches of the Kac weight h_{p,q}(c)."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    return KacWeight(p, q, 1), KacWeight(p, q, -1)


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    x = Fraction(x)
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None
