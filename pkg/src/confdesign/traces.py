"""Zero modes of tensor-Virasoro vectors and their traces.

A mode word is a tuple of letters ``(slot, j)`` read left to right, the
rightmost letter acting first; ``(slot, j)`` is the Virasoro mode ``L_j`` of
that slot, lowering the degree by ``j``.  The zero mode o(v) of a PBW vector
is expanded into words by repeatedly peeling the outermost creation operator
with the associativity formula

    (L_{-p} w)_k = sum_i C(p+i-2, i) [ L_{-p-i} w_{k+p+i}
                                       + (-1)^p w_{k+1-i} L_{i-1} ],

where ``x_k`` is the mode of x lowering degree by k.  The state degree is
tracked during the recursion, so the sums are finite and exact on states of
the given starting degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exact import CEH, MPoly, RatFunc
from .virasoro import (
    Partition,
    TensorModule,
    VermaModule,
    _accumulate,
    hw_solve,
    partitions,
    tensor_vacuum,
    vadd,
)

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]

# recursion guard for normal ordering
MAX_REDUCTION_STEPS = 10 ** 6


def _binom(top: int, k: int) -> int:
    """Generalised binomial C(top, k) for integer top and k >= 0."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= top - i
    return num // math.factorial(k)


# ---------------------------------------------------------------------------
# expansion of zero modes into words


def _state_letters(key: Tuple[Partition, Partition]) -> Tuple[Tuple[str, int], ...]:
    """Creation operators of a tensor PBW key, outermost first."""
    lam, mu = key
    return tuple(("a", p) for p in lam) + tuple(("b", q) for q in mu)


@lru_cache(maxsize=None)
def _expand(letters: Tuple[Tuple[str, int], ...], k: int, s: int, cap: int) -> Tuple[Tuple[Word, int], ...]:
    """Words for the mode ``v_k`` of the PBW state built from ``letters``,
    valid on states of degree s.  Mode indices above ``cap`` are dropped."""
    if k > s:
        return ()
    if not letters:
        return (((), 1),) if k == 0 else ()
    (slot, p), rest = letters[0], letters[1:]
    out: Dict[Word, int] = {}
    # L_{-p-i} w_{k+p+i}: w must lower degree s by k+p+i
    i = 0
    while k + p + i <= s and k + p + i <= cap:
        coef = _binom(p + i - 2, i)
        if coef:
            for w, x in _expand(rest, k + p + i, s, cap):
                _accumulate(out, ((slot, -p - i),) + w, coef * x)
        i += 1
    # w_{k+1-i} L_{i-1}: L_{i-1} acting first on degree s
    sign = -1 if p % 2 else 1
    for i in range(0, min(s + 1, cap + 1) + 1):
        coef = _binom(p + i - 2, i)
        if not coef:
            continue
        for w, x in _expand(rest, k + 1 - i, s - i + 1, cap):
            _accumulate(out, w + ((slot, i - 1),), sign * coef * x)
    return tuple(sorted(out.items()))


def omode_expand(v: Mapping, ambient_degree: int = 8, start_degree: int = 0) -> Dict[Word, object]:
    """o(v) as a linear combination of mode words.

    The words are exact as operators on states of relative degree
    ``start_degree`` (0 for a lowest space).  ``ambient_degree`` caps mode
    indices; it must be at least deg v + start_degree.  Every mode index in
    the recursion is bounded by the start degree plus the number of
    creation letters, so any admissible cap gives the same words.
    """
    out: Dict[Word, object] = {}
    for key, x in v.items():
        deg = sum(key[0]) + sum(key[1])
        if ambient_degree < deg + start_degree:
            raise ValueError(f"ambient degree {ambient_degree} too small for a degree-{deg} vector")
        for w, y in _expand(_state_letters(key), 0, start_degree, ambient_degree):
            _accumulate(out, w, x * y)
    return out


# ---------------------------------------------------------------------------
# normal ordering and traces on a lowest space


class WordReducer:
    """Traces of words on a lowest space W_h (killed by positive modes of
    both slots), expressed as polynomials sum r_ij a_0^i b_0^j.

    Positive letters are bubbled to the right with the Virasoro brackets of
    their slot (slots commute).  A word ending in a positive letter kills
    W_h; a word of nonzero total degree has no W_h -> W_h block; once no
    positive letter remains a degree-0 word is a pure zero-mode word."""

    def __init__(self, charge_a, charge_b):
        self.charges = {"a": charge_a, "b": charge_b}
        self._memo: Dict[Word, Dict[Tuple[int, int], object]] = {}
        self.steps = 0

    def reduce(self, word: Word) -> Dict[Tuple[int, int], object]:
        if sum(j for _, j in word):
            return {}
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        self.steps += 1
        if self.steps > MAX_REDUCTION_STEPS:
            raise RuntimeError("normal ordering exceeded the step ceiling")
        res = self._reduce(word)
        self._memo[word] = res
        return res

    def _reduce(self, word: Word) -> Dict[Tuple[int, int], object]:
        pos = None
        for idx in range(len(word) - 1, -1, -1):
            if word[idx][1] > 0:
                pos = idx
                break
        if pos is None:
            # degree 0 and no positive letter: only zero modes remain
            na = sum(1 for s, _ in word if s == "a")
            return {(na, len(word) - na): 1}
        if pos == len(word) - 1:
            return {}
        (sx, m), (sy, n) = word[pos], word[pos + 1]
        swapped = word[:pos] + ((sy, n), (sx, m)) + word[pos + 2:]
        out = dict(self.reduce(swapped))
        if sx == sy:
            if m - n:
                merged = word[:pos] + ((sx, m + n),) + word[pos + 2:]
                for key, x in self.reduce(merged).items():
                    _accumulate(out, key, (m - n) * x)
            if m + n == 0 and m ** 3 - m:
                central = self.charges[sx] * Fraction(m ** 3 - m, 12)
                for key, x in self.reduce(word[:pos] + word[pos + 2:]).items():
                    _accumulate(out, key, central * x)
        return out


@dataclass
class TraceExpr:
    """beta + sum_i alpha[i] * m_i, with m_0 the dimension."""

    beta: object = 0
    alpha: Dict[int, object] = field(default_factory=dict)

    def __add__(self, other: "TraceExpr") -> "TraceExpr":
        alpha = dict(self.alpha)
        for i, x in other.alpha.items():
            _accumulate(alpha, i, x)
        return TraceExpr(self.beta + other.beta, alpha)

    def scale(self, s) -> "TraceExpr":
        return TraceExpr(self.beta * s, {i: x * s for i, x in self.alpha.items() if x * s})

    def coeff(self, i: int):
        return self.alpha.get(i, 0)

    def evaluate(self, moments: Sequence) -> object:
        return self.beta + sum(x * moments[i] for i, x in self.alpha.items())

    def subs(self, values) -> "TraceExpr":
        def sub(x):
            return x.subs(values) if isinstance(x, (MPoly, RatFunc)) else x

        alpha = {}
        for i, x in self.alpha.items():
            y = sub(x)
            if y:
                alpha[i] = y
        return TraceExpr(sub(self.beta), alpha)

    def __eq__(self, other):
        if not isinstance(other, TraceExpr):
            return NotImplemented
        keys = set(self.alpha) | set(other.alpha)
        return self.beta == other.beta and all(self.coeff(i) == other.coeff(i) for i in keys)

    def to_json(self) -> dict:
        return {"beta": str(self.beta), "alpha": {str(i): str(self.alpha[i]) for i in sorted(self.alpha)}}


def _zero_poly_trace(poly: Mapping[Tuple[int, int], object], h) -> Dict[int, object]:
    """Rewrite sum r_ij a_0^i b_0^j with b_0 = h - a_0 as moment coefficients."""
    out: Dict[int, object] = {}
    for (i, j), r in poly.items():
        for t in range(j + 1):
            coef = r * math.comb(j, t) * (-1) ** t
            if j - t:
                coef = coef * h ** (j - t)
            _accumulate(out, i + t, coef)
    return out


def _charges(c, e, half):
    cs, es, _ = CEH.gens()
    c = cs if c is None else c
    if half:
        e = Fraction(1, 2)
    elif e is None:
        e = es
    return c, e


def trace_lowest(v: Mapping, h=None, c=None, e=None, half: bool = False, ambient_degree: int = 10) -> TraceExpr:
    """tr over a lowest space W_h of o(v) as sum_i alpha_i m*_i, m*_i = tr a_0^i.

    ``h``, ``c``, ``e`` default to the symbols of the coefficient field."""
    c, e = _charges(c, e, half)
    if h is None:
        h = CEH.gen("h")
    reducer = WordReducer(e, c - e)
    words = omode_expand(v, ambient_degree, 0)
    alpha: Dict[int, object] = {}
    for w, x in sorted(words.items()):
        poly = reducer.reduce(w)
        if not poly:
            continue
        for i, y in _zero_poly_trace(poly, h).items():
            _accumulate(alpha, i, x * y)
    if alpha and max(alpha) > 4:
        raise AssertionError("moment index above 4 from a degree <= 8 vector")
    return TraceExpr(0, alpha)


def vacuum_block_trace(v: Mapping, c=None, e=None, half: bool = False, ambient_degree: int = 10):
    """Trace of o(v) on span{a_{-2}1, b_{-2}1} of the vacuum tensor module."""
    c, e = _charges(c, e, half)
    mod = tensor_vacuum(c, None if half else e, half)
    words = omode_expand(v, ambient_degree, 2)
    states = [((2,), ()), ((), (2,))]
    total = 0
    for w, x in sorted(words.items()):
        if sum(j for _, j in w):
            continue
        for st in states:
            y = mod.apply_word(w, {st: 1}).get(st)
            if y:
                total = total + x * y
    return total


def trace_V2(v: Mapping, c=None, e=None, half: bool = False, ambient_degree: int = 10) -> TraceExpr:
    """tr over V_2 of o(v) as beta + sum_i alpha_i m_i, m_i = tr_{V_2} a_0^i.

    Assumes V_1 = 0, so V_2 is the vacuum slice {a_{-2}1, b_{-2}1} plus
    lowest spaces of weight 2.  On the vacuum slice a_0 has eigenvalues 2
    and 0, so the lowest spaces carry moments m_i - 2^i - [i = 0]."""
    block = vacuum_block_trace(v, c, e, half, ambient_degree)
    low = trace_lowest(v, Fraction(2), c, e, half, ambient_degree)
    beta = block
    for i, x in low.alpha.items():
        beta = beta - x * (2 ** i + (1 if i == 0 else 0))
    return TraceExpr(beta, dict(low.alpha))


# ---------------------------------------------------------------------------
# eigenvalue splitting


EIGENVALUES = (Fraction(0), Fraction(1, 2), Fraction(1, 16))


def eigensplit(t: TraceExpr, flavor: str = "module", weights: Sequence[Fraction] = EIGENVALUES) -> Dict[object, object]:
    """Substitute m_i = sum_l d_l l^i.

    Returns an affine form {1: constant, l: coefficient of d_l}.  For the
    ``V2`` flavor the vacuum vector a_{-2}1 (eigenvalue 2) is split off
    explicitly and b_{-2}1 is counted in d_0."""
    if flavor not in ("module", "V2"):
        raise ValueError("flavor must be 'module' or 'V2'")
    out: Dict[object, object] = {1: t.beta}
    for l in weights:
        out[l] = 0
    for i, x in t.alpha.items():
        for l in weights:
            out[l] = out[l] + x * (l ** i if (i or l) else 1)
        if flavor == "V2":
            out[1] = out[1] + x * 2 ** i
    return out


def moments_from_split(counts: Mapping[Fraction, object], upto: int = 4, flavor: str = "module") -> List[object]:
    """m_0..m_upto for given eigenvalue multiplicities."""
    ms = []
    for i in range(upto + 1):
        m = 2 ** i if flavor == "V2" else 0
        for l, d in counts.items():
            m = m + d * (l ** i if (i or l) else 1)
        ms.append(m)
    return ms


# ---------------------------------------------------------------------------
# independent oracle: normal-ordered products of fields on concrete vectors


class FieldModeOracle:
    """Modes of vertex operators of tensor PBW states acting on concrete
    vectors of a tensor module, via

        Y(L_{-p} w, z) = :(d^{p-2}/(p-2)!) T(z) Y(w, z):

    with the usual creation/annihilation split of the first factor.  This
    shares no code with the word expansion above."""

    def __init__(self, module: TensorModule, degree_of):
        self.mod = module
        self.degree_of = degree_of  # key -> degree of a basis vector

    def _vec_degree(self, vec) -> Optional[int]:
        degs = {self.degree_of(k) for k in vec}
        if not degs:
            return None
        if len(degs) != 1:
            raise ValueError("inhomogeneous vector")
        return degs.pop()

    def mode(self, letters, n: int, vec):
        """(state)_{(n)} applied to vec, state given by creation letters."""
        if not vec:
            return {}
        if not letters:
            return dict(vec) if n == -1 else {}
        (slot, p), rest = letters[0], letters[1:]
        wt_rest = sum(q for _, q in rest)
        deg = self._vec_degree(vec)
        nd = p - 2
        out = {}
        # A_(k) = C(nd-k-1, nd) L_{k-nd-1}; creation part k < 0 acts after B
        # B_(j) lowers degree by j - wt_rest + 1
        k = -1
        while True:
            j = n - k - 1
            drop = j - wt_rest + 1
            if drop > deg:
                break
            coef = _binom(nd - k - 1, nd)
            if coef:
                inner = self.mode(rest, j, vec)
                if inner:
                    out = vadd(out, self.mod.act(slot, k - nd - 1, inner), coef)
            k -= 1
        k = 0
        while k - nd - 1 <= deg:
            coef = _binom(nd - k - 1, nd)
            if coef:
                inner = self.mod.act(slot, k - nd - 1, vec)
                if inner:
                    out = vadd(out, self.mode(rest, n - k - 1, inner), coef)
            k += 1
        return out

    def zero_mode(self, key, vec):
        letters = _state_letters(key)
        wt = sum(p for _, p in letters)
        return self.mode(letters, wt - 1, vec)


def oracle_lowest_trace(v: Mapping, c, e, h1, h2) -> Fraction:
    """Diagonal entry of o(v) on the lowest vector of M(e,h1) (x) M(c-e,h2)."""
    mod = TensorModule(VermaModule(e, h1), VermaModule(c - e, h2))
    oracle = FieldModeOracle(mod, lambda key: sum(key[0]) + sum(key[1]))
    low = {((), ()): 1}
    total = 0
    for key, x in v.items():
        y = oracle.zero_mode(key, low).get(((), ()))
        if y:
            total = total + x * y
    return total


def oracle_vacuum_block_trace(v: Mapping, c, e, half: bool = False) -> Fraction:
    """Diagonal trace of o(v) on {a_{-2}1, b_{-2}1} via field modes."""
    mod = tensor_vacuum(c, None if half else e, half)
    oracle = FieldModeOracle(mod, lambda key: sum(key[0]) + sum(key[1]))
    total = 0
    for st in (((2,), ()), ((), (2,))):
        for key, x in v.items():
            y = oracle.zero_mode(key, {st: 1}).get(st)
            if y:
                total = total + x * y
    return total


# ---------------------------------------------------------------------------
# a single Heisenberg field


@lru_cache(maxsize=None)
def _boson_expand(parts: Tuple[int, ...], k: int, s: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """Words for (h_{-q1} ... h_{-qr} 1)_k on states of degree s, where the
    weight-1 field h has modes h_j lowering degree by j:

        (h_{-q} w)_k = sum_i C(q+i-1, i) [h_{-q-i} w_{k+q+i} - (-1)^q w_{k-i} h_i]."""
    if k > s:
        return ()
    if not parts:
        return (((), 1),) if k == 0 else ()
    q, rest = parts[0], parts[1:]
    out: Dict[Tuple[int, ...], int] = {}
    i = 0
    while k + q + i <= s:
        coef = math.comb(q + i - 1, i)
        for w, x in _boson_expand(rest, k + q + i, s):
            _accumulate(out, (-q - i,) + w, coef * x)
        i += 1
    sign = 1 if q % 2 else -1
    for i in range(0, s + 1):
        coef = math.comb(q + i - 1, i)
        for w, x in _boson_expand(rest, k - i, s - i):
            _accumulate(out, w + (i,), sign * coef * x)
    return tuple(sorted(out.items()))


def boson_normal_order(word: Tuple[int, ...], norm) -> Dict[Tuple[int, ...], object]:
    """Normal-order a Heisenberg word: negative modes left, h_0 (central)
    in the middle, positive modes right, using [h_m, h_n] = m <h,h> delta."""
    out: Dict[Tuple[int, ...], object] = {}
    stack = [(tuple(word), 1)]
    while stack:
        w, x = stack.pop()
        for idx in range(len(w) - 1):
            a, b = w[idx], w[idx + 1]
            if _boson_rank(a) > _boson_rank(b):
                stack.append((w[:idx] + (b, a) + w[idx + 2:], x))
                if a + b == 0 and a:
                    stack.append((w[:idx] + w[idx + 2:], x * a * norm))
                break
        else:
            _accumulate(out, w, x)
    return out


def _boson_rank(j: int) -> Tuple[int, int]:
    # negatives first, then zeros, then positives; within a group sort by index
    return (0 if j < 0 else 1 if j == 0 else 2, j)


def boson_zero_mode_on_v1(v: Mapping[Tuple[int, ...], object], norm) -> Dict[Tuple[int, ...], object]:
    """Normal-ordered words of o(v) restricted to V_1 of a VOA with V_0 = C1.

    Words whose positive part lowers by 2 or more vanish on V_1."""
    out: Dict[Tuple[int, ...], object] = {}
    for parts, x in v.items():
        for w, y in _boson_expand(tuple(parts), 0, 1):
            for nw, z in boson_normal_order(w, norm).items():
                if sum(j for j in nw if j > 0) > 1:
                    continue
                _accumulate(out, nw, x * y * z)
    return out


def boson_trace_v1(words: Mapping[Tuple[int, ...], object], norm, dim_v1=None, abelian: bool = True):
    """Trace on V_1 of normal-ordered words.

    Rules: h_1 maps V_1 onto V_0 = C1 with h_1 x = <h,x> 1 and h_{-1} 1 = h;
    h_0 is central and kills the vacuum; with ``abelian`` it vanishes on V_1.
    The identity word contributes dim V_1 (symbolic when not given)."""
    total = 0
    dim_coeff = 0
    for w, x in words.items():
        if not w:
            dim_coeff = dim_coeff + x
            continue
        if all(j == 0 for j in w):
            if abelian:
                continue
            raise ValueError("non-abelian h_0 traces are not modelled")
        negs = [j for j in w if j < 0]
        zeros = [j for j in w if j == 0]
        poss = [j for j in w if j > 0]
        if negs == [-1] and poss == [1]:
            if not zeros:
                total = total + x * norm
            continue
        # any other degree-0 normal-ordered word lowers V_1 below V_0 or
        # applies h_0 to the vacuum
    if dim_coeff:
        if dim_v1 is None:
            raise ValueError("trace depends on dim V_1")
        total = total + dim_coeff * dim_v1
    return total


HEISENBERG_TEST_VECTOR = {(3, 1): 8, (2, 2): -6, (1, 1, 1, 1): -2}


def heisenberg_trace_check(norm=Fraction(2)):
    """tr over V_1 of o(v) for v = (8h_{-3}h_{-1} - 6h_{-2}^2 - 2h_{-1}^4)1
    when V_1 is abelian; equals 24 <h,h>."""
    words = boson_zero_mode_on_v1(HEISENBERG_TEST_VECTOR, norm)
    return boson_trace_v1(words, norm)


class FockSpace:
    """Heisenberg Fock module of momentum 0 with <h,h> = norm; basis keys
    are partitions for h_{-lam_1} ... h_{-lam_r} 1."""

    def __init__(self, norm=Fraction(1)):
        self.norm = norm

    def act(self, m: int, vec):
        out = {}
        for lam, x in vec.items():
            if m < 0:
                _accumulate(out, tuple(sorted(lam + (-m,), reverse=True)), x)
            elif m > 0:
                cnt = lam.count(m)
                if cnt:
                    rest = list(lam)
                    rest.remove(m)
                    _accumulate(out, tuple(rest), x * cnt * m * self.norm)
        return out

    def sugawara(self, n: int, vec):
        """L'_n = 1/(2<h,h>) sum_k :h_{n-k} h_k:."""
        deg = max((sum(k) for k in vec), default=0)
        out = {}
        for k in range(-deg - abs(n) - 1, deg + abs(n) + 2):
            a, b = n - k, k
            if a > b:
                a, b = b, a  # normal order: annihilator on the right
            part = self.act(a, self.act(b, vec))
            out = vadd(out, part, Fraction(1, 2) / self.norm)
        return out


# ---------------------------------------------------------------------------
# degree-1 identity: o(a^1_{(-1)} ... a^l_{(-1)} 1) on V_1


@lru_cache(maxsize=None)
def _v1_expand(labels: Tuple[int, ...], k: int, s: int) -> Tuple[Tuple[Tuple[Tuple[int, int], ...], int], ...]:
    """Words for (a^{l1}_{-1} ... a^{lr}_{-1} 1)_k on states of degree s for
    generic weight-1 fields (no brackets used).  A state of degree 0 is a
    multiple of the vacuum, which every non-negative mode kills."""
    if k > s:
        return ()
    if not labels:
        return (((), 1),) if k == 0 else ()
    lab, rest = labels[0], labels[1:]
    out: Dict[Tuple[Tuple[int, int], ...], int] = {}
    i = 0
    while k + 1 + i <= s:
        for w, x in _v1_expand(rest, k + 1 + i, s):
            _accumulate(out, ((lab, -1 - i),) + w, x)
        i += 1
    for i in range(0, s + 1):
        if s == 0:
            break  # a_i with i >= 0 kills the vacuum
        for w, x in _v1_expand(rest, k - i, s - i):
            _accumulate(out, w + ((lab, i),), x)
    return tuple(sorted(out.items()))


def _canonical_rotation(word):
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


def v1_trace_expand(l: int, cyclic: bool = True) -> Dict[Tuple[Tuple[int, int], ...], int]:
    """tr_{V_1} o(a^1_{(-1)} ... a^l_{(-1)} 1) as a combination of traces of
    words in the modes a^j_{(n)} (letters (j, n), rightmost acting first).

    With ``cyclic`` each word is replaced by its least cyclic rotation,
    which does not change its trace."""
    if l < 1:
        raise ValueError("l must be at least 1")
    out: Dict[Tuple[Tuple[int, int], ...], int] = {}
    for w, x in _v1_expand(tuple(range(1, l + 1)), 0, 1):
        _accumulate(out, _canonical_rotation(w) if cyclic else w, x)
    return out


def v1_trace_closed_words(l: int) -> Dict[Tuple[Tuple[int, int], ...], int]:
    """Closed-form right-hand side of the degree-1 trace identity.

    a^l_(0) ... a^1_(0), then for j < l the word a^j_(-1) a^l_(1) followed by
    the remaining zero modes in decreasing label order, and finally
    a^l_(-1) a^{l-1}_(1) a^{l-2}_(0) ... a^1_(0)."""
    if l < 1:
        raise ValueError("l must be at least 1")
    out: Dict[Tuple[Tuple[int, int], ...], int] = {}
    _accumulate(out, tuple((j, 0) for j in range(l, 0, -1)), 1)
    if l == 1:
        return out
    for j in range(1, l):
        rest = tuple((i, 0) for i in range(l - 1, 0, -1) if i != j)
        _accumulate(out, ((j, -1), (l, 1)) + rest, 1)
    rest = tuple((i, 0) for i in range(l - 2, 0, -1))
    _accumulate(out, ((l, -1), (l - 1, 1)) + rest, 1)
    return out
