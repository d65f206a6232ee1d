from fractions import Fraction as F

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from confdesign import rootsys as rs
from confdesign.expected import ROOT_R6


@pytest.mark.parametrize("label, count", [("A1", 2), ("A4", 20), ("B4", 32), ("C5", 50), ("D4", 24),
                                          ("G2", 12), ("F4", 48), ("E6", 72), ("E7", 126), ("E8", 240)])
def test_root_counts(label, count):
    assert len(rs.build_roots(label).roots) == count


def test_bad_types():
    for args in (("B", 1), ("D", 3), ("E", 5), ("F", 5), ("X", 3)):
        with pytest.raises(rs.DomainError):
            rs.build_roots(*args)


@pytest.mark.parametrize("label", ["E6", "E7", "E8", "F4", "G2"])
def test_exceptional_inner_products_integral(label):
    phi = rs.build_roots(label)
    long_ = max(phi.norms())
    for a in phi.roots[:20]:
        for b in phi.roots:
            assert (2 * rs.dot(a, b) / rs.dot(b, b)).denominator == 1
    assert long_ in (2, 6)


def _sympy_zonal(l, n, y, x):
    """|x|^l |y|^l C_l^{(n-2)/2}(cos t), rescaled to a unit leading coefficient."""
    s, p, q = rs.dot(x, y), rs.dot(x, x), rs.dot(y, y)
    t = sympy.Symbol("t")
    g = sympy.Poly(sympy.gegenbauer(l, sympy.Rational(n - 2, 2), t), t)
    lead = g.LC()
    total = sympy.Integer(0)
    for (k,), c in g.terms():
        b = (l - k) // 2
        total += c / lead * sympy.Rational(s.numerator, s.denominator) ** k * \
            sympy.Rational((p * q).numerator, (p * q).denominator) ** b
    return F(str(sympy.nsimplify(total)))


@pytest.mark.parametrize("l", [4, 6])
@pytest.mark.parametrize("n", [3, 4, 7])
def test_zonal_against_gegenbauer(l, n):
    y = (1, 2, 0, 1, 0, 0, 0)[:n]
    R = rs.gegenbauer_R(l, n, y)
    for x in [(1, 0, 3, 0, 0, 0, 0), (2, -1, 1, 1, 1, 0, 1), (F(1, 2),) * 7]:
        assert R(x[:n]) == _sympy_zonal(l, n, y, x[:n])


@pytest.mark.parametrize("l", [4, 6])
@pytest.mark.parametrize("n", range(2, 17, 2))
def test_zonal_laplacian_vanishes(l, n):
    y = [1, 1] + [0] * (n - 2)
    R = rs.gegenbauer_R(l, n, y)
    if n <= 6:
        assert not rs.laplacian_terms(R.expand().terms, n)
    assert all(c == 0 for c in R.zonal_laplacian())


def test_symbolic_zonal_is_harmonic_for_all_n():
    for l in (4, 6):
        R = rs.gegenbauer_R(l, None, (F(1),))
        assert all(c == 0 for c in R.zonal_laplacian())


def test_r4_in_dimension_one_vanishes():
    R = rs.gegenbauer_R(4, 1, (1,))
    assert R((3,)) == 0 and R((F(5, 7),)) == 0


def test_harmonic_poly_rejects():
    with pytest.raises(ValueError):
        rs.HarmonicPoly(2, {(2, 0): F(1)})
    with pytest.raises(ValueError):
        rs.HarmonicPoly(2, {(2, 0): F(1), (1, 0): F(1)}, check=False)
    assert rs.HarmonicPoly(2, {(2, 0): F(1), (0, 2): F(-1)}).degree == 2


@pytest.mark.parametrize("family", ["A", "B", "C", "D"])
@pytest.mark.parametrize("l", [4, 6])
def test_closed_form_matches_enumeration(family, l):
    for n in range(max(rs.MIN_RANK[family], 2), 9):
        phi = rs.build_roots(family, n)
        assert rs.closed_form_sum(l, family, n) == rs.zonal_root_sum(l, phi), (family, n)


@pytest.mark.parametrize("label", ["A5", "D6", "E6", "E7", "E8"])
def test_simply_laced_form(label):
    phi = rs.build_roots(label)
    for l in (4, 6):
        want = rs.closed_form_sum(l, "simply-laced", phi.rank, h=phi.coxeter)
        assert want == rs.zonal_root_sum(l, phi)


def test_simply_laced_needs_coxeter():
    with pytest.raises(rs.DomainError):
        rs.closed_form_sum(4, "simply-laced", 5)


@pytest.mark.parametrize("label", ["A3", "D5", "E6", "E7", "E8"])
def test_root_count_profile(label):
    phi = rs.build_roots(label)
    prof = rs.rootcount_profile(phi)
    assert prof.n2 == 1 and prof.n1 == 2 * phi.coxeter - 4


def test_profile_rejects_non_simply_laced():
    with pytest.raises(rs.DomainError):
        rs.rootcount_profile(rs.build_roots("B3"))


@pytest.mark.parametrize("label", [k for k in ROOT_R6 if k != "C4"])
def test_special_values(label):
    assert rs.zonal_root_sum(6, rs.build_roots(label)) == ROOT_R6[label]


def test_c4_degree_six_by_classes():
    """Hand split of the C4 sum: 24 from the D4 roots and -8 from each of the
    eight long roots +-2e_i."""
    phi = rs.build_roots("C4")
    R = rs.gegenbauer_R(6, 4, phi.default_y())
    d4 = sum((R(a) for a in phi.roots if rs.dot(a, a) == 2), F(0))
    long_ = [R(a) for a in phi.roots if rs.dot(a, a) == 4]
    assert d4 == 24
    assert long_ == [F(-8)] * 8
    assert rs.zonal_root_sum(6, phi) == -40


def test_e8_sums_vanish():
    e8 = rs.build_roots("E8")
    assert rs.zonal_root_sum(4, e8) == 0 and rs.zonal_root_sum(6, e8) == 0


def _reflect(v, a):
    k = 2 * rs.dot(v, a) / rs.dot(a, a)
    return tuple(x - k * y for x, y in zip(v, a))


@pytest.mark.parametrize("label", ["B4", "C4", "F4", "G2", "E6"])
def test_weyl_invariance(label):
    phi = rs.build_roots(label)
    y = phi.default_y()
    base = (rs.zonal_root_sum(4, phi, y), rs.zonal_root_sum(6, phi, y))
    for a in phi.roots[::max(1, len(phi.roots) // 6)]:
        ry = _reflect(y, a)
        assert (rs.zonal_root_sum(4, phi, ry), rs.zonal_root_sum(6, phi, ry)) == base


@pytest.mark.parametrize("label", ["A3", "B3", "G2", "E8"])
def test_odd_moments_vanish(label):
    phi = rs.build_roots(label)
    arr = np.array([[float(x) for x in a] for a in phi.roots])
    w = np.array([1.0, -2.0, 3.0, 0.5, 0.25, 1.5, -1.0, 2.0][:arr.shape[1]])
    for k in (1, 3, 5):
        assert abs(np.sum((arr @ w) ** k)) < 1e-9


def test_hurley_sum():
    a1 = rs.build_roots("A1")
    assert rs.hurley_sum([a1, a1]) == 16
    e8, d4 = rs.build_roots("E8"), rs.build_roots("D4")
    assert rs.hurley_sum([e8, d4]) == rs.hurley_sum([d4, e8])
    assert rs.hurley_sum([a1, 3]) > 0
    with pytest.raises(rs.DomainError):
        rs.hurley_sum([2, 3])


def test_integral_levels():
    assert rs.integral_levels("A1") == {F(1): 1, F(8): None, F(16): None}
    assert rs.integral_levels("E8") == {F(1): None, F(8): 1, F(16): None}
    assert rs.affine_central_charge("E8", 1) == 8


@settings(max_examples=30)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4).filter(any),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_zonal_depends_only_on_products(y, x):
    """R(x) is unchanged under any orthogonal map fixing y; a coordinate swap
    of two coordinates where y agrees is one."""
    R = rs.gegenbauer_R(6, 4, y)
    for i in range(4):
        for j in range(i + 1, 4):
            if y[i] == y[j]:
                xs = list(x)
                xs[i], xs[j] = xs[j], xs[i]
                assert R(xs) == R(x)
