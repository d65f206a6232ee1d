from fractions import Fraction as F

import pytest
from sympy.functions.combinatorial.numbers import partition
from hypothesis import given
from hypothesis import strategies as st

from confdesign.exact import CEH, RatFunc, det
from confdesign.expected import HW_MULTIPLICITIES, HW_MULTIPLICITIES_HALF, ISING_S6
from confdesign.virasoro import (BranchPointError, DegenerateChargeError, VermaModule, degenerate_charges,
                                 graded_dim, gram_matrix, half_singular_vector, hpq, hw_solve,
                                 ising_vacuum_module, kac_det_vacuum, partitions, tensor_vacuum, vadd)

c, e, h = CEH.gens()


@pytest.mark.parametrize("n, min_part, want", [(0, 2, 1), (8, 2, 7), (4, 1, 5)])
def test_graded_dim(n, min_part, want):
    assert graded_dim(n, min_part) == want


@pytest.mark.parametrize("n", range(0, 13))
def test_partition_count_matches_sympy(n):
    assert graded_dim(n, 1) == partition(n)
    assert all(sum(p) == n and list(p) == sorted(p, reverse=True) for p in partitions(n))


def test_l2_on_l_minus_2_vacuum():
    mod = VermaModule(c, vacuum=True)
    assert mod.act(2, mod.pbw((2,))) == {(): c / 2}


def test_l1_kills_degree_two_vacuum():
    mod = VermaModule(F(7, 3), vacuum=True)
    assert mod.act(1, mod.pbw((2,))) == {}


def test_ising_singular_vector():
    mod = VermaModule(F(1, 2), vacuum=True)
    s6 = {k: F(v) for k, v in ISING_S6.items()}
    assert half_singular_vector() == s6
    assert mod.act(1, s6) == {}
    assert mod.act(2, s6) == {}


def test_ising_quotient_dimensions():
    from confdesign.expected import ISING_VACUUM

    mod = ising_vacuum_module()
    assert tuple(len(mod.basis(d)) for d in range(10)) == ISING_VACUUM


# --- brackets -----------------------------------------------------------------

modes = st.integers(-4, 4)


@st.composite
def verma_vectors(draw, mod, max_degree=6):
    deg = draw(st.integers(0, max_degree))
    basis = mod.basis(deg)
    if not basis:
        return {(): F(1)}
    keys = draw(st.lists(st.sampled_from(basis), min_size=1, max_size=3, unique=True))
    return {k: F(draw(st.integers(-6, 6).filter(bool))) for k in keys}


def _bracket_defect(mod, m, n, v):
    lhs = vadd(mod.act(m, mod.act(n, v)), mod.act(n, mod.act(m, v)), -1)
    rhs = {k: (m - n) * x for k, x in mod.act(m + n, v).items()}
    if m + n == 0:
        rhs = vadd(rhs, {k: mod.charge * F(m ** 3 - m, 12) * x for k, x in v.items()})
    return vadd(lhs, rhs, -1)


@given(st.data(), modes, modes)
def test_bracket_on_verma_module(data, m, n):
    mod = VermaModule(F(-11, 4), F(3, 7))
    v = data.draw(verma_vectors(mod))
    assert _bracket_defect(mod, m, n, v) == {}


@given(st.data(), modes, modes)
def test_bracket_on_vacuum_module(data, m, n):
    mod = VermaModule(F(5, 2), vacuum=True)
    v = data.draw(verma_vectors(mod))
    assert _bracket_defect(mod, m, n, v) == {}


def test_bracket_symbolic_charge():
    mod = VermaModule(c, h)
    v = mod.pbw((3, 1))
    for m, n in ((2, -2), (3, -1), (1, 2)):
        assert _bracket_defect(mod, m, n, v) == {}


# --- Gram matrices and Kac determinants ---------------------------------------

def test_gram_degree_two_vacuum():
    assert gram_matrix(VermaModule(c, vacuum=True), 2) == [[c / 2]]


def test_gram_degree_four_vacuum_roots():
    d = det(gram_matrix(VermaModule(c, vacuum=True), 4))
    assert RatFunc(d) == RatFunc(c * c * (5 * c + 22) / 2)


def test_gram_degree_two_generic_weight():
    # classical closed form 2h(16h^2 + 2(c - 5)h + c)
    d = det(gram_matrix(VermaModule(c, h), 2))
    assert RatFunc(d) == RatFunc(2 * h * (16 * h * h + 2 * (c - 5) * h + c))
    # vanishes exactly at the Kac weights with pq <= 2 (checked at c = 1/2)
    roots = {hpq(1, 1)[0](F(1, 2)), hpq(1, 2)[0](F(1, 2)), hpq(2, 1)[0](F(1, 2))}
    for r in roots:
        assert det(gram_matrix(VermaModule(F(1, 2), r), 2)) == 0


@pytest.mark.parametrize("n", [2, 4, 6])
def test_gram_symmetric(n):
    g = gram_matrix(VermaModule(F(13, 5), F(2, 3)), n)
    assert all(g[i][j] == g[j][i] for i in range(len(g)) for j in range(len(g)))


@pytest.mark.parametrize("n", [2, 4, 6])
def test_kac_factors_persist(n):
    lower = {f for f, _ in kac_det_vacuum(n)[1]}
    upper = dict(kac_det_vacuum(n + 2)[1])
    lower_m = dict(kac_det_vacuum(n)[1])
    assert lower <= set(upper)
    assert all(upper[f] >= lower_m[f] for f in lower)


def test_kac_det_at_point_matches_numeric_gram():
    cv = F(9, 7)
    content, facs = kac_det_vacuum(6)
    val = content
    for f, m in facs:
        val *= f.subs({"c": cv}).to_rat() ** m
    assert val == det(gram_matrix(VermaModule(cv, vacuum=True), 6))


def test_degenerate_charges():
    assert degenerate_charges(8) == sorted(F(x) for x in ("-46/3", "-68/7", "-22/5", "-3/5", "0", "1/2"))


# --- Kac weights --------------------------------------------------------------

def test_hpq_examples():
    assert all(b(F(1, 2)) == 0 for b in hpq(1, 1))
    assert F(1, 2) in {b(F(1, 2)) for b in hpq(1, 3)}
    assert F(1, 16) in {b(F(1, 2)) for b in hpq(1, 2)}


def test_hpq_branch_point():
    with pytest.raises(BranchPointError):
        hpq(1, 2)[0](1)


# --- highest-weight vectors ---------------------------------------------------

def test_multiplicity_tables():
    assert tuple(len(hw_solve(n)) for n in range(9)) == HW_MULTIPLICITIES
    assert tuple(len(hw_solve(n, half=True)) for n in range(9)) == HW_MULTIPLICITIES_HALF


def test_v2_closed_form():
    (v,) = hw_solve(2)
    assert v == {((), (2,)): RatFunc(1), ((2,), ()): RatFunc(e - c, e)}


@pytest.mark.parametrize("n", [2, 4, 6, 8])
@pytest.mark.parametrize("half", [False, True])
def test_annihilated_by_positive_modes(n, half):
    cv, ev = F(41, 6), F(9, 4)
    mod = tensor_vacuum(cv, None if half else ev, half)
    for v in hw_solve(n, cv, None if half else ev, half=half):
        for k in range(1, 5):
            assert mod.total(k, v) == {}


def test_degenerate_charge_rejected():
    with pytest.raises(DegenerateChargeError):
        hw_solve(4, F(3), F(-22, 5))
    with pytest.raises(DegenerateChargeError):
        hw_solve(6, F(1), F(1, 2))


nondegenerate = st.fractions(min_value=-30, max_value=30, max_denominator=9).filter(
    lambda x: x not in degenerate_charges(8))


@given(nondegenerate, nondegenerate)
def test_specialisation_commutes(cv, ev):
    if cv - ev in degenerate_charges(8):
        return
    for n in (2, 4, 6):
        symbolic = hw_solve(n)
        try:
            subbed = [{k: x.subs({"c": cv, "e": ev}).to_rat() for k, x in v.items()} for v in symbolic]
        except ZeroDivisionError:
            return
        direct = hw_solve(n, cv, ev)
        assert [{k: x for k, x in v.items() if x} for v in subbed] == direct
