from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from confdesign.exact import (CEH, PolyRing, RatFunc, SingularSystemError, as_rat, det, det_cofactor,
                              nullspace, poly_factor, primitive_vector, rref, solve_linear)

c, e, h = CEH.gens()
C, E, H = sympy.symbols("c e h")

small = st.fractions(min_value=-20, max_value=20, max_denominator=7)
nonzero = small.filter(bool)


def to_sympy(p):
    return sympy.sympify(str(p).replace("^", "**"), locals={"c": C, "e": E, "h": H})


@st.composite
def polys(draw, max_terms=4, max_deg=3):
    out = CEH.const(0)
    for _ in range(draw(st.integers(1, max_terms))):
        mono = CEH.const(draw(small))
        for g in (c, e, h):
            mono = mono * g ** draw(st.integers(0, max_deg))
        out = out + mono
    return out


points = st.fixed_dictionaries({"c": small, "e": small, "h": small})


# --- factoring --------------------------------------------------------------

def test_factor_kac_degree_four():
    _, facs = poly_factor(c * (5 * c + 22))
    assert {str(f) for f, m in facs} == {"c", "5*c + 22"}
    assert all(m == 1 for _, m in facs)


def test_factor_irreducible_linear():
    _, facs = poly_factor(c)
    assert facs == [(c, 1)]


def test_factor_cubic_from_eight_design():
    content, facs = poly_factor(10 * c ** 3 - 474 * c ** 2 + 5180 * c - 11184)
    got = {str(f): m for f, m in facs}
    assert got == {"c - 12": 1, "5*c^2 - 177*c + 466": 1}
    prod = CEH.const(content)
    for f, m in facs:
        prod = prod * f ** m
    assert prod == 10 * c ** 3 - 474 * c ** 2 + 5180 * c - 11184


@given(polys(), polys())
def test_factor_matches_sympy(p, q):
    prod = p * q
    if not prod or prod.is_constant():
        return
    content, facs = poly_factor(prod)
    _, theirs = sympy.factor_list(to_sympy(prod))
    assert sorted(m for _, m in facs) == sorted(m for _, m in theirs)
    ours = {sympy.Poly(to_sympy(f), C, E, H).monic() for f, _ in facs}
    assert ours == {sympy.Poly(f, C, E, H).monic() for f, _ in theirs}
    rebuilt = CEH.const(content)
    for f, m in facs:
        rebuilt = rebuilt * f ** m
    assert rebuilt == prod


# --- rational functions -------------------------------------------------------

def test_ratfunc_cancels_common_factor():
    r = (c * c - 1) / (2 * c + 2)
    assert r == (c - 1) / 2
    assert hash(r) == hash((c - 1) / 2)


def test_ratfunc_substitution_renormalises():
    r = (c - e) / e
    assert r.subs({"e": F(1, 2)}) == RatFunc(2 * c - 1)
    assert r.subs({"c": F(3), "e": F(1, 2)}).to_rat() == 5


def test_division_by_zero_polynomial():
    with pytest.raises(ZeroDivisionError):
        RatFunc(c) / RatFunc(0)


@given(polys(), polys(), polys())
def test_canonical_form_independent_of_bracketing(p, q, r):
    if not q or not r:
        return
    a = (RatFunc(p) / q) / r
    b = RatFunc(p) / (q * r)
    assert a == b
    assert repr(a) == repr(b)


@given(polys(), polys(), points)
def test_evaluation_is_multiplicative(p, q, pt):
    assert (p * q).subs(pt).to_rat() == p.subs(pt).to_rat() * q.subs(pt).to_rat()
    assert (p + q).subs(pt).to_rat() == p.subs(pt).to_rat() + q.subs(pt).to_rat()


def test_other_variable_names():
    ring = PolyRing(("n",))
    n = ring.gen("n")
    assert str(RatFunc(n * n - 4) / (n + 2)) == "n - 2"


def test_as_rat_rejects_symbols():
    assert as_rat(RatFunc(CEH.const(F(3, 4)))) == F(3, 4)
    with pytest.raises((ValueError, TypeError)):
        as_rat(RatFunc(c))


# --- linear algebra -------------------------------------------------------------

matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n))


@given(matrices)
def test_bareiss_equals_cofactor(rows):
    assert det(rows) == det_cofactor(rows) == sympy.Matrix(rows).det()


@given(matrices, points)
def test_det_commutes_with_evaluation(rows, pt):
    sym = [[x * c + (i - j) * e + h if (i + j) % 2 else x for j, x in enumerate(row)] for i, row in enumerate(rows)]
    d = det(sym)
    d = d.subs(pt) if hasattr(d, "subs") else RatFunc(CEH.const(d)).subs(pt)
    ev = [[x.subs(pt).to_rat() if hasattr(x, "subs") else F(x) for x in row] for row in sym]
    assert as_rat(d) == det(ev)


def test_det_one_by_one():
    assert det([[c]]) == c


def test_symbolic_det_matches_sympy():
    rows = [[c, 1, e], [h, c - e, 2], [1, h, c]]
    ref = sympy.Matrix([[C, 1, E], [H, C - E, 2], [1, H, C]]).det()
    assert sympy.expand(to_sympy(det(rows)) - ref) == 0


def test_solve_identity():
    b = [RatFunc(c), RatFunc(e), RatFunc(h)]
    ident = [[int(i == j) for j in range(3)] for i in range(3)]
    assert solve_linear(ident, b) == b


def test_solve_symbolic_two_by_two():
    x = solve_linear([[c, 1], [1, e]], [1, 0])
    assert x[0] == RatFunc(e, c * e - 1)
    assert x[1] == RatFunc(-1, c * e - 1)


def test_singular_system_reports_kernel():
    with pytest.raises(SingularSystemError) as info:
        solve_linear([[1, 2], [2, 4]], [5, 6])
    (k,) = info.value.kernel
    assert k[0] + 2 * k[1] == 0


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=3))
def test_nullspace_is_annihilated(rows):
    for v in nullspace(rows):
        assert all(sum(F(a) * x for a, x in zip(row, v)) == 0 for row in rows)
    assert len(nullspace(rows)) == 4 - sympy.Matrix(rows).rank()


def test_rref_pivots():
    red, piv = rref([[2, 4, 6], [1, 1, 1]])
    assert list(piv) == [0, 1]


def test_primitive_vector_clears_denominators():
    v = primitive_vector({"x": RatFunc(c, 2 * e), "y": RatFunc(-1, 6 * e)})
    assert v == {"x": RatFunc(3 * c), "y": RatFunc(CEH.const(-1))}
