from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confdesign import qforms as qf
from confdesign.expected import CBRT_J, EXTREMAL_DIM_V2, EXTREMAL_STRENGTH, ISING_VACUUM, J_MINUS_744
from confdesign.virasoro import graded_dim

GRID = qf.GRID


def test_delta_is_eta_power():
    assert qf.qs_eta(12) ** 24 == qf.qs_delta(12)


def test_tau_values():
    assert qf.qs_delta(6).coeffs == tuple(F(x) for x in (1, -24, 252, -1472, 4830, -6048))


def test_eisenstein_discriminant():
    n = 10
    lhs = qf.eisenstein(4, n) ** 3 - qf.eisenstein(6, n) ** 2
    assert tuple(lhs.coeffs[1:]) == tuple(1728 * x for x in qf.qs_delta(n - 1).coeffs)


def test_j_coefficients():
    j = qf.qs_j(4)
    assert j.lead == -GRID
    assert j.coeffs == (1, 744, 196884, 21493760)
    assert (j - 744).coeffs == J_MINUS_744


def test_cbrt_j():
    r = qf.qs_cbrt_j(6)
    assert r.lead == -GRID // 3
    assert r.coeffs[:4] == CBRT_J
    assert r ** 3 == qf.qs_j(6)


def test_delta_times_j_is_integral():
    prod = qf.qs_delta(10) * (qf.qs_j(10) - 744)
    assert all(x.denominator == 1 for x in prod.coeffs)


@pytest.mark.parametrize("cv", [1, 8, 24, 48])
def test_vacuum_character_counts_partitions(cv):
    ch = qf.vacuum_character(cv, 12)
    assert ch.lead == -2 * cv
    assert ch.coeffs == tuple(graded_dim(n, 2) for n in range(12))


def test_vacuum_character_off_grid():
    with pytest.raises(ValueError):
        qf.vacuum_character(F(1, 5), 4)


def test_ising_character():
    ch = qf.ising_vacuum_character(10)
    assert ch.lead == -1
    assert ch.coeffs == ISING_VACUUM


@pytest.mark.parametrize("cv", sorted(EXTREMAL_DIM_V2))
def test_extremal_dim_v2(cv):
    assert qf.extremal_character(cv).dim_v2 == EXTREMAL_DIM_V2[cv]


def test_extremal_c24_is_j():
    ch = qf.extremal_character(24, 6)
    assert ch.series == qf.qs_j(6) - 744


@pytest.mark.parametrize("cv", [8, 16, 24, 32, 40, 48, 72])
def test_extremal_ratio_positive(cv):
    assert qf.extremal_character(cv).A[0] > 0


def test_extremal_truncation():
    a = qf.extremal_character(32, 8)
    b = qf.extremal_character(32, 12)
    assert a.lambdas == b.lambdas
    assert b.series.truncate(a.series.precision) == a.series


def test_extremal_rejects_bad_charge():
    for bad in (0, 12, -8):
        with pytest.raises(ValueError):
            qf.extremal_character(bad)


@pytest.mark.parametrize("w, d", [(0, 1), (2, 0), (4, 1), (12, 2), (14, 1), (24, 3), (26, 2), (-4, 0), (5, 0)])
def test_mform_dim(w, d):
    assert qf.mform_dim(w) == d


def test_extremal_strength_table():
    for cv, want in EXTREMAL_STRENGTH.items():
        assert qf.extremal_design_strength(cv) == want


@given(st.integers(min_value=1, max_value=12))
def test_strength_depends_on_c_mod_24(m):
    cv = 8 * m
    assert qf.extremal_design_strength(cv) == qf.extremal_design_strength(cv + 24)


def test_design_triviality():
    assert not qf.design_is_trivial(24)
    assert qf.design_is_trivial(8 * 24 * 3 + 16)


def test_a1_identity():
    rep = qf.a1_identity_check(11)
    assert rep.holds and rep.order == 10 and rep.failure is None


def test_a1_character_symmetric():
    for x in qf.a1_character(10).coeffs:
        assert x.is_symmetric()


def test_su2_multiplicities():
    x = qf.LaurentPoly({2: 1, 1: 1, 0: 3, -1: 1, -2: 1})
    assert qf.su2_multiplicities(x) == {0: 2, 2: 1}
    with pytest.raises(ValueError):
        qf.su2_multiplicities(qf.LaurentPoly({1: 1}))


series = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=6), min_size=3, max_size=8)


@settings(max_examples=40)
@given(series, series)
def test_product_commutes(a, b):
    x, y = qf.QSeries.from_list(a), qf.QSeries.from_list(b)
    assert x * y == y * x


@settings(max_examples=40)
@given(series)
def test_inverse(a):
    if a[0] == 0:
        return
    x = qf.QSeries.from_list(a)
    assert x * x.inverse() == qf.QSeries.one(len(a))


@settings(max_examples=30)
@given(series)
def test_root_cubes_back(a):
    a = [F(1)] + a[1:]
    x = qf.QSeries.from_list(a)
    assert x.root(3) ** 3 == x
