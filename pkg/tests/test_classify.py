from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confdesign import classify as cl
from confdesign.exact import CEH, RatFunc
from confdesign.expected import (C36_D, COND6, D6, D8, D8_HALF, DIOPHANT_C, FERMION_C40_D0, INTERSECTIONS,
                                 MOD8_EQUATION, MOD8_EQUATION_HALF, MSTARS_C8, TABLE1)
from confdesign.realroots import QuadraticSurd

c, e, h = CEH.gens()


def proportional(a, b):
    r = RatFunc(a) / RatFunc(b)
    return r.is_constant() and bool(r)


# --- six-design conditions ----------------------------------------------------

@pytest.mark.parametrize("hv, want", [(F(1, 2), [F(1, 2), F(8)]), (F(1), [F(8), F(16)]),
                                      (F(3, 2), [F(16), F(47, 2)])])
def test_condition_roots(hv, want):
    assert cl.condition_roots(cl.cond6_module().condition, hv) == want


def test_half_branch_factors():
    facs = cl.cond6_module_half().factor_set()
    for f in (c + 24, c + 15, 5 * c + 44, 35 * c - 34):
        assert f in facs
    assert proportional(cl.cond6_module_half().condition, cl.cond6_module().condition)
    assert proportional(cl.cond6_module().condition, COND6)


def test_half_branch_singular_at_c8():
    d = cl.cond6_module_half().determinant
    assert d.subs({"c": F(8), "h": F(1, 2)}).to_rat() == 0


def test_eigenspace_fractions_c8():
    got = cl.eigenspace_fractions(8, F(1, 2))
    assert tuple(got[l] for l in (F(0), F(1, 2), F(1, 16))) == MSTARS_C8
    # 496 divides the dimension of the lowest space
    assert max(x.denominator for x in got.values()) == 496


def test_two_fermions_leave_no_solution():
    assert cl.two_fermion_solutions() == 0


@pytest.mark.parametrize("cv, d", [(8, 156), (24, 196884), (1496, 54836)])
def test_d6_values(cv, d):
    assert cl.d6(cv) == d


def test_d6_closed_form():
    assert cl.cond6_V2() == RatFunc(D6)


@pytest.mark.parametrize("cv, want", [(F(47, 2), (F(3, 2), F(31, 16))), (F(16), (F(1), F(3, 2)))])
def test_solve_h6(cv, want):
    assert cl.solve_h6(cv) == want


def test_solve_h6_irrational_at_24():
    assert all(isinstance(r, QuadraticSurd) for r in cl.solve_h6(24))


# --- the scan -----------------------------------------------------------------

def _brute_force(kmax):
    """Integer test of 2q(748q^2 - 55pq + p^2) d = p(2388q^2 + 955pq + 70p^2)
    with c = p/q = k/70, no use of the scan's reduced form."""
    out = []
    for k in range(1, kmax + 1):
        p, q = k, 70
        num = p * (2388 * q * q + 955 * p * q + 70 * p * p)
        den = 2 * q * (748 * q * q - 55 * p * q + p * p)
        if den and num % den == 0 and num // den > 0:
            out.append((F(p, q), num // den))
    return out


def test_scan_matches_brute_force_on_prefix():
    assert cl.diophant_scan(kmax=120000) == _brute_force(120000)


def test_scan_full():
    scan = cl.diophant_scan()
    assert tuple(x for x, _ in scan) == DIOPHANT_C
    assert scan[-1] == (F(1496), 54836)
    assert (F(1, 2), 1) in scan
    assert any(x == F(52, 5) for x, _ in scan)


def test_scan_bound_leaves_small_remainder():
    form = cl.scan_form()
    k = form.bound() + 1
    for kk in (k, k + 1, 10 * k):
        r = sum(x * kk ** i for i, x in enumerate(form.rem))
        d = sum(x * kk ** i for i, x in enumerate(form.quad))
        assert 0 < abs(r) < abs(d)


def test_scan_reproducible_across_workers():
    one = cl.diophant_scan(chunk=1 << 21, workers=1)
    two = cl.diophant_scan(chunk=1 << 21, workers=2)
    assert one == two


def test_rational_filter():
    kept = cl.rational_h_filter(cl.diophant_scan())
    assert F(808, 35) in kept and F(1, 2) in kept and F(24) not in kept
    assert len(kept) == 8


def test_table_rows():
    rows = {r.c: r for r in cl.table1()}
    assert rows[F(164, 5)].d == 90118 and rows[F(164, 5)].h == (F(11, 5), F(12, 5))
    assert rows[F(32)].d == 139504 and rows[F(32)].h is None
    assert rows[F(16)].d == 2296 and rows[F(16)].h == (F(1), F(3, 2))


def test_table_rows_satisfy_condition():
    cond = cl.cond6_module().condition
    for cv, _, hs in TABLE1:
        if hs is None:
            continue
        for hv in hs:
            assert cond.subs({"c": cv, "h": hv}).to_rat() == 0


def test_table_markdown_has_dashes():
    md = cl.table1_markdown(cl.table1())
    assert md.count("| - ") == 4


# --- eight-design conditions --------------------------------------------------

def test_eight_design_equations():
    assert proportional(cl.cond8_module(False).condition, MOD8_EQUATION)
    assert proportional(cl.cond8_module(True).condition, MOD8_EQUATION_HALF)


def test_eight_design_h1_roots():
    roots = cl.condition_roots(cl.cond8_module().condition, 1)
    assert F(12) in roots
    surds = [r for r in roots if isinstance(r, QuadraticSurd)]
    assert {(r.rational, abs(r.coefficient), r.radicand) for r in surds} == {(F(177, 10), F(1, 10), 22009)}


def test_eight_design_linear_factor_at_half():
    assert F(0) in cl.condition_roots(cl.cond8_module().condition, F(1, 2))
    assert F(24) in cl.condition_roots(cl.cond8_module().condition, F(3, 2))


def test_half_branch_vector_choice():
    """Only v8a gives the module equation and only v8b the V_2 formula."""
    other = cl.build_system("module", 8, True, labels=("v2", "v4", "v8b")).determinant()
    assert not proportional(other, MOD8_EQUATION_HALF)
    assert cl.dimension_from(cl.build_system("V2", 8, True, labels=("v2", "v4", "v8a"))) != D8_HALF
    assert cl.cond8_V2(half=True) == D8_HALF


def test_d8_values():
    d8 = cl.cond8_V2()
    assert d8 == D8
    assert d8.subs({"c": F(24)}).to_rat() == 196884
    assert d8.subs({"c": F(142, 5)}).to_rat() == -164081


def test_intersections():
    assert tuple(cl.intersection_roots()) == INTERSECTIONS


def test_c36():
    sysm = cl.build_system("V2", 8, False, F(36), F(3), labels=("v2", "v4", "v6a", "v8a", "v8b"))
    assert sysm.determinant() != 0
    assert cl.c36_exclusion() == C36_D < 0


def test_fermion_rows():
    assert cl.fermion_split(24).feasible
    row = cl.fermion_split(40)
    assert not row.feasible and row.d0 == FERMION_C40_D0
    assert not cl.fermion_split(1496).feasible


# --- properties ---------------------------------------------------------------

@pytest.mark.parametrize("cv", [F(52, 5), F(24), F(1496)])
def test_e_independence(cv):
    vals = {cl.cond6_V2(cv, ev) for ev in (F(3), F(7, 3), F(11, 2), F(-5, 4), F(40))}
    assert vals == {cl.d6(cv)}
    vals8 = {cl.cond8_V2(cv, ev) for ev in (F(3), F(7, 3), F(11, 2))}
    assert vals8 == {D8.subs({"c": cv}).to_rat()}


rationals = st.fractions(min_value=-60, max_value=60, max_denominator=12)


@settings(max_examples=50)
@given(rationals, rationals)
def test_off_list_points_nonsingular(cv, hv):
    cond = cl.cond6_module().condition.subs({"c": cv, "h": hv}).to_rat()
    det = cl.cond6_module().determinant
    try:
        val = det.subs({"c": cv, "e": F(3), "h": hv}).to_rat()
    except ZeroDivisionError:
        return
    assert (val == 0) == (cond == 0 or cv in (-24, -15, F(-44, 5), F(34, 35), 3) or hv == 0)


@settings(max_examples=200)
@given(rationals)
def test_d6_equals_d8_only_on_root_set(cv):
    if cv in INTERSECTIONS:
        return
    try:
        d6 = RatFunc(D6).subs({"c": cv}).to_rat()
        d8 = D8.subs({"c": cv}).to_rat()
    except ZeroDivisionError:
        return
    assert d6 != d8
