"""Exact arithmetic: rationals, polynomials and rational functions in a few
named variables, and exact linear algebra over any field of such elements.

Polynomials are thin immutable wrappers around python-flint's ``fmpq_mpoly``;
everything else (normalisation of rational functions, determinants, kernels,
linear solves) is implemented here so the algorithms stay inspectable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import flint

Rat = Fraction

__all__ = [
    "Rat",
    "PolyRing",
    "MPoly",
    "RatFunc",
    "CEH",
    "SingularSystemError",
    "as_rat",
    "det",
    "det_cofactor",
    "rref",
    "nullspace",
    "solve_linear",
    "poly_factor",
    "is_zero",
    "primitive_vector",
]


def _to_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def _from_fmpq(q) -> Fraction:
    return Fraction(int(q.p), int(q.q))


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions, flint rationals and constant polynomials or
    rational functions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return _from_fmpq(x)
    if isinstance(x, (MPoly, RatFunc)):
        return x.to_rat()
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class PolyRing:
    """Q[x1, ..., xk] with lexicographic order on the given variable names."""

    _instances: Dict[Tuple[str, ...], "PolyRing"] = {}

    def __new__(cls, names: Sequence[str]):
        names = tuple(names)
        inst = cls._instances.get(names)
        if inst is None:
            inst = super().__new__(cls)
            inst.names = names
            inst.ctx = flint.fmpq_mpoly_ctx.get(names, "lex")
            cls._instances[names] = inst
        return inst

    def __repr__(self):
        return f"PolyRing({self.names!r})"

    def __reduce__(self):
        return (PolyRing, (self.names,))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gen(self, name: str) -> "MPoly":
        return MPoly(self.ctx.gens()[self.names.index(name)], self)

    def gens(self) -> Tuple["MPoly", ...]:
        return tuple(MPoly(g, self) for g in self.ctx.gens())

    def const(self, value) -> "MPoly":
        return MPoly(self.ctx.from_dict({(0,) * self.nvars: _to_fmpq(value)}), self)

    def from_terms(self, terms: Mapping[Tuple[int, ...], object]) -> "MPoly":
        return MPoly(self.ctx.from_dict({k: _to_fmpq(v) for k, v in terms.items() if v}), self)

    def _raw(self, x):
        """Underlying flint polynomial for x (MPoly of this ring or a scalar)."""
        if isinstance(x, MPoly):
            if x.ring is not self:
                raise ValueError("mixing polynomials from different rings")
            return x._p
        return self.ctx.from_dict({(0,) * self.nvars: _to_fmpq(x)})


def _flint_hash(p) -> int:
    return hash(tuple(sorted((k, (int(v.p), int(v.q))) for k, v in p.to_dict().items())))


class MPoly:
    """Immutable, hashable polynomial with rational coefficients."""

    __slots__ = ("_p", "ring")

    def __init__(self, p, ring: PolyRing):
        self._p = p
        self.ring = ring

    # construction helpers -------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.ring is not self.ring:
                raise ValueError("mixing polynomials from different rings")
            return other._p
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return self.ring._raw(other)
        return NotImplemented

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return MPoly(self._p + o, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return MPoly(self._p - o, self.ring)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return MPoly(o - self._p, self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return MPoly(self._p * o, self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return MPoly(-self._p, self.ring)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        return MPoly(self._p ** k, self.ring)

    def __truediv__(self, other):
        return RatFunc(self) / other

    def __rtruediv__(self, other):
        return RatFunc(other, ring=self.ring) / RatFunc(self)

    def exact_div(self, other) -> "MPoly":
        """Quotient when ``other`` divides ``self`` exactly; ValueError otherwise."""
        o = self._coerce(other)
        try:
            return MPoly(self._p / o, self.ring)
        except Exception as exc:  # flint raises DomainError
            raise ValueError("division is not exact") from exc

    def __floordiv__(self, other):
        return self.exact_div(other)

    # comparison / hashing ---------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RatFunc) else NotImplemented
        if o is NotImplemented:
            if isinstance(other, RatFunc):
                return other == self
            return NotImplemented
        return self._p == o

    def __hash__(self):
        if self._p.is_constant():
            return hash(self.to_rat())
        return _flint_hash(self._p)

    def __bool__(self):
        return not self._p.is_zero()

    def __repr__(self):
        return f"MPoly({str(self._p)})"

    def __str__(self):
        return str(self._p)

    # inspection -------------------------------------------------------------
    @property
    def terms(self) -> Dict[Tuple[int, ...], Fraction]:
        return {k: _from_fmpq(v) for k, v in self._p.to_dict().items()}

    def is_constant(self) -> bool:
        return self._p.is_constant()

    def to_rat(self) -> Fraction:
        if not self._p.is_constant():
            raise ValueError(f"{self} is not constant")
        d = self._p.to_dict()
        return _from_fmpq(next(iter(d.values()))) if d else Fraction(0)

    def degree(self, var: str) -> int:
        if self._p.is_zero():
            return -1
        return int(self._p.degrees()[self.ring.names.index(var)])

    def total_degree(self) -> int:
        return -1 if self._p.is_zero() else int(self._p.total_degree())

    def variables(self) -> Tuple[str, ...]:
        unused = set(self._p.unused_gens())
        return tuple(n for n in self.ring.names if n not in unused)

    def leading_coefficient(self) -> Fraction:
        return _from_fmpq(self._p.leading_coefficient())

    # substitution -----------------------------------------------------------
    def subs(self, values: Mapping[str, object]):
        """Substitute rationals and/or polynomials for variables.

        Returns an MPoly (a constant one if every variable was substituted by
        a number)."""
        numeric = {k: _to_fmpq(v) for k, v in values.items() if not isinstance(v, (MPoly, RatFunc))}
        symbolic = {k: v for k, v in values.items() if isinstance(v, (MPoly, RatFunc))}
        p = self._p.subs(numeric) if numeric else self._p
        if not symbolic:
            return MPoly(p, self.ring)
        if any(isinstance(v, RatFunc) and not v.is_polynomial() for v in symbolic.values()):
            return RatFunc(MPoly(p, self.ring)).subs(symbolic)
        images = []
        for name, g in zip(self.ring.names, self.ring.ctx.gens()):
            v = symbolic.get(name)
            if v is None:
                images.append(g)
            else:
                images.append(v.numer._p if isinstance(v, RatFunc) else v._p)
        return MPoly(p.compose(*images), self.ring)

    def __call__(self, **values) -> Fraction:
        return self.subs(values).to_rat()

    def factor(self):
        return poly_factor(self)


class RatFunc:
    """Immutable quotient of polynomials kept in lowest terms with a monic
    (lex-leading coefficient 1) denominator."""

    __slots__ = ("_n", "_d", "ring")

    def __init__(self, num, den=None, ring: Optional[PolyRing] = None):
        if ring is None:
            for x in (num, den):
                if isinstance(x, (MPoly, RatFunc)):
                    ring = x.ring
                    break
            else:
                ring = CEH
        self.ring = ring
        if isinstance(num, RatFunc):
            if den is not None:
                q = num / RatFunc(den, ring=ring)
                self._n, self._d = q._n, q._d
                return
            self._n, self._d = num._n, num._d
            return
        if isinstance(den, RatFunc):
            q = RatFunc(num, ring=ring) / den
            self._n, self._d = q._n, q._d
            return
        made = RatFunc._from_raw(ring._raw(num), ring._raw(1 if den is None else den), ring)
        self._n, self._d = made._n, made._d

    @classmethod
    def _from_raw(cls, n, d, ring):
        obj = cls.__new__(cls)
        obj.ring = ring
        if d.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if n.is_zero():
            obj._n, obj._d = n, ring._raw(1)
            return obj
        if not d.is_constant():
            g = n.gcd(d)
            if not g.is_constant():
                n = n / g
                d = d / g
        lc = d.leading_coefficient()
        if lc != 1:
            n = n / lc
            d = d / lc
        obj._n, obj._d = n, d
        return obj

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.ring is not self.ring:
                raise ValueError("mixing rational functions from different rings")
            return other._n, other._d
        if isinstance(other, MPoly):
            return other._p, self.ring._raw(1)
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return self.ring._raw(other), self.ring._raw(1)
        return None

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n2, d2 = o
        if d2 == self._d:
            return RatFunc._from_raw(self._n + n2, self._d, self.ring)
        if d2.is_constant() and d2 == 1:
            return RatFunc._from_raw(self._n + n2 * self._d, self._d, self.ring)
        if self._d.is_constant() and self._d == 1:
            return RatFunc._from_raw(self._n * d2 + n2, d2, self.ring)
        g = self._d.gcd(d2)
        a = d2 / g
        return RatFunc._from_raw(self._n * a + n2 * (self._d / g), self._d * a, self.ring)

    __radd__ = __add__

    def __neg__(self):
        obj = RatFunc.__new__(RatFunc)
        obj.ring, obj._n, obj._d = self.ring, -self._n, self._d
        return obj

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + RatFunc._from_raw(-o[0], o[1], self.ring)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n2, d2 = o
        if n2.is_zero() or self._n.is_zero():
            return RatFunc._from_raw(self.ring._raw(0), self.ring._raw(1), self.ring)
        if d2.is_constant() and self._d.is_constant():
            return RatFunc._from_raw(self._n * n2, self._d * d2, self.ring)
        # cross-cancel before multiplying to keep sizes small
        g1 = self._n.gcd(d2)
        g2 = n2.gcd(self._d)
        return RatFunc._from_raw((self._n / g1) * (n2 / g2), (self._d / g2) * (d2 / g1), self.ring)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self._n.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc._from_raw(self._d, self._n, self.ring)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n2, d2 = o
        if n2.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFunc._from_raw(d2, n2, self.ring)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc._from_raw(o[0], o[1], self.ring) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        obj = RatFunc.__new__(RatFunc)
        obj.ring, obj._n, obj._d = self.ring, self._n ** k, self._d ** k
        return obj

    # comparison ---------------------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # both sides are normalised, but compare cross-multiplied to be safe
        return self._n * o[1] == o[0] * self._d

    def __hash__(self):
        if self._d.is_constant() and self._n.is_constant():
            return hash(self.to_rat())
        if self._d.is_constant():
            return _flint_hash(self._n)
        return hash((_flint_hash(self._n), _flint_hash(self._d)))

    def __bool__(self):
        return not self._n.is_zero()

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self._d.is_constant() and self._d == 1:
            return str(self._n)
        return f"({self._n})/({self._d})"

    # inspection ---------------------------------------------------------------
    @property
    def numer(self) -> MPoly:
        return MPoly(self._n, self.ring)

    @property
    def denom(self) -> MPoly:
        return MPoly(self._d, self.ring)

    def is_polynomial(self) -> bool:
        return self._d.is_constant()

    def is_constant(self) -> bool:
        return self._n.is_constant() and self._d.is_constant()

    def to_rat(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return MPoly(self._n, self.ring).to_rat() / MPoly(self._d, self.ring).to_rat()

    def to_poly(self) -> MPoly:
        if not self._d.is_constant():
            raise ValueError(f"{self} is not a polynomial")
        return MPoly(self._n / self._d, self.ring)

    def variables(self) -> Tuple[str, ...]:
        used = set(self.numer.variables()) | set(self.denom.variables())
        return tuple(n for n in self.ring.names if n in used)

    # substitution -------------------------------------------------------------
    def subs(self, values: Mapping[str, object]) -> "RatFunc":
        """Substitute numbers, polynomials or rational functions for variables.

        Raises ZeroDivisionError when the denominator vanishes identically
        after the substitution."""
        numeric = {k: v for k, v in values.items() if not isinstance(v, (MPoly, RatFunc))}
        symbolic = {k: v for k, v in values.items() if isinstance(v, (MPoly, RatFunc))}
        n, d = self.numer, self.denom
        if numeric:
            n, d = n.subs(numeric), d.subs(numeric)
        if not symbolic:
            return RatFunc(n, d, ring=self.ring)
        if all(isinstance(v, MPoly) or v.is_polynomial() for v in symbolic.values()):
            polys = {k: (v if isinstance(v, MPoly) else v.to_poly()) for k, v in symbolic.items()}
            return RatFunc(n.subs(polys), d.subs(polys), ring=self.ring)
        return _eval_terms(n, symbolic) / _eval_terms(d, symbolic)

    def __call__(self, **values) -> Fraction:
        return self.subs(values).to_rat()


def _eval_terms(p: MPoly, values: Mapping[str, object]) -> RatFunc:
    """Horner-free evaluation of p at rational-function values (slow path)."""
    ring = p.ring
    gens = ring.gens()
    images = [RatFunc(values[n]) if n in values else RatFunc(g) for n, g in zip(ring.names, gens)]
    total = RatFunc(0, ring=ring)
    for exps, coeff in p.terms.items():
        term = RatFunc(coeff, ring=ring)
        for img, k in zip(images, exps):
            if k:
                term = term * img ** k
        total = total + term
    return total


CEH = PolyRing(("c", "e", "h"))


def is_zero(x) -> bool:
    return not x


# ---------------------------------------------------------------------------
# factorisation


def poly_factor(p: MPoly) -> Tuple[Fraction, List[Tuple[MPoly, int]]]:
    """Factor p over Q into (content, [(irreducible, multiplicity), ...]).

    Factors are primitive integer polynomials with positive lex-leading
    coefficient, sorted by (total degree, string form) for determinism."""
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    content, facs = p._p.factor()
    out = []
    content = _from_fmpq(content)
    for f, m in facs:
        g = MPoly(f, p.ring)
        lc = g.leading_coefficient()
        # make the factor an integer primitive polynomial with positive lc
        den = 1
        for v in g.terms.values():
            den = den * v.denominator // _gcd(den, v.denominator)
        scaled = g * den
        num_gcd = 0
        for v in scaled.terms.values():
            num_gcd = _gcd(num_gcd, int(v))
        scale = Fraction(den, num_gcd)
        if lc < 0:
            scale = -scale
        g = g * scale
        content = content / scale ** m
        out.append((g, int(m)))
    out.sort(key=lambda fm: (fm[0].total_degree(), str(fm[0])))
    return content, out


def _gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def primitive_vector(vec: Mapping[object, object]) -> Dict[object, object]:
    """Rescale a vector with rational-function entries so the entries are
    integer polynomials without a common factor, the entry at the smallest
    key having positive lex-leading coefficient."""
    if not vec:
        return {}
    vals = {k: RatFunc(x) for k, x in vec.items()}
    ring = next(iter(vals.values())).ring
    den = ring._raw(1)
    for x in vals.values():
        d = x._d
        den = den * (d / den.gcd(d))
    polys = {k: x._n * (den / x._d) for k, x in vals.items()}
    g = None
    for q in polys.values():
        g = q if g is None else g.gcd(q)
    polys = {k: MPoly(q / g, ring) for k, q in polys.items()}
    lcd, content = 1, 0
    for q in polys.values():
        for v in q.terms.values():
            lcd = lcd * v.denominator // math.gcd(lcd, v.denominator)
    for q in polys.values():
        for v in q.terms.values():
            content = math.gcd(content, int(v * lcd))
    scale = Fraction(lcd, content)
    if polys[min(polys)].leading_coefficient() < 0:
        scale = -scale
    return {k: RatFunc(q * scale) for k, q in polys.items()}


# ---------------------------------------------------------------------------
# linear algebra over a field of exact elements (Fraction or RatFunc)


class SingularSystemError(ArithmeticError):
    """Raised by solve_linear when the coefficient matrix is singular."""

    def __init__(self, kernel):
        super().__init__(f"singular system (kernel dimension {len(kernel)})")
        self.kernel = kernel


def _is_ratfunc_matrix(rows) -> bool:
    return any(isinstance(x, (RatFunc, MPoly)) for r in rows for x in r)


def _ring_of(rows) -> PolyRing:
    for r in rows:
        for x in r:
            if isinstance(x, (RatFunc, MPoly)):
                return x.ring
    return CEH


def _bareiss(a: List[list], divide: Callable) -> object:
    """Fraction-free Gaussian elimination; ``a`` is consumed.  Entries must
    live in an integral domain where ``divide`` is exact division."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0 * a[0][0]
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = divide(akk * row_i[j] - aik * row_k[j], prev)
            row_i[k] = 0 * akk
        prev = akk
    return a[n - 1][n - 1] if sign == 1 else -a[n - 1][n - 1]


def det(rows: Sequence[Sequence[object]]):
    """Determinant by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers (rational entries) or polynomials
    (rational-function entries); the scaling is undone at the end."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    if _is_ratfunc_matrix(rows):
        ring = _ring_of(rows)
        one = ring._raw(1)
        raw_rows = []
        scale = RatFunc(1, ring=ring)
        for r in rows:
            rf = [x if isinstance(x, RatFunc) else RatFunc(x, ring=ring) for x in r]
            lcm = one
            for x in rf:
                if not x._d.is_constant() or x._d != 1:
                    lcm = lcm * (x._d / lcm.gcd(x._d))
            raw_rows.append([x._n * (lcm / x._d) for x in rf])
            scale = scale * RatFunc._from_raw(one, lcm, ring)
        d = _bareiss(raw_rows, lambda x, y: x if (isinstance(y, int) and y == 1) else x / y)
        if isinstance(d, int):
            d = ring._raw(d)
        return RatFunc._from_raw(d, one, ring) * scale
    int_rows = []
    scale = Fraction(1)
    for r in rows:
        fr = [Fraction(x) for x in r]
        lcm = 1
        for x in fr:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        int_rows.append([int(x * lcm) for x in fr])
        scale /= lcm
    return Fraction(_bareiss(int_rows, lambda x, y: x // y)) * scale


def det_cofactor(rows: Sequence[Sequence[object]]):
    """Determinant by Laplace expansion along the first row (test oracle)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def rref(rows: Sequence[Sequence[object]], column_order: Optional[Sequence[int]] = None):
    """Reduced row echelon form over a field.

    Columns are scanned in ``column_order`` (default: natural order) when
    choosing pivots.  Returns (reduced_rows, pivot_columns); zero rows are
    dropped."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    order = list(range(ncols)) if column_order is None else list(column_order)
    pivots = []
    r = 0
    for col in order:
        piv = None
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][col]
        inv = RatFunc(pv).inverse() if isinstance(pv, (RatFunc, MPoly)) else 1 / Fraction(pv)
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                ri, rr = m[i], m[r]
                m[i] = [ri[j] - f * rr[j] if rr[j] else ri[j] for j in range(ncols)]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[object]], ncols: Optional[int] = None,
              column_order: Optional[Sequence[int]] = None, one=None):
    """Basis of {x : A x = 0}.

    Each basis vector has a 1 in one free column and 0 in the other free
    columns (the RREF-canonical basis).  With ``column_order`` the pivots are
    taken from the front of that order, so the columns listed last are the
    preferred free variables."""
    if ncols is None:
        ncols = len(rows[0])
    if one is None:
        one = RatFunc(1, ring=_ring_of(rows)) if _is_ratfunc_matrix(rows) else Fraction(1)
    zero = one * 0
    if not rows:
        return [[one if j == i else zero for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows, column_order)
    order = list(range(ncols)) if column_order is None else list(column_order)
    pivset = set(pivots)
    free = [c for c in order if c not in pivset]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def solve_linear(a: Sequence[Sequence[object]], b: Sequence[object]):
    """Solve the square system A x = b exactly.

    Raises SingularSystemError (carrying a kernel basis) when det A = 0."""
    n = len(a)
    if any(len(r) != n for r in a) or len(b) != n:
        raise ValueError("solve_linear needs a square system")
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    red, pivots = rref(aug, column_order=list(range(n)))
    if len([p for p in pivots if p < n]) < n:
        raise SingularSystemError(nullspace([list(r) for r in a], n))
    sol = [None] * n
    for row, p in zip(red, pivots):
        sol[p] = row[n]
    return sol
