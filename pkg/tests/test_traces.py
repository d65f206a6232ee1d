from fractions import Fraction as F
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confdesign.exact import CEH, RatFunc
from confdesign.expected import TRACE_LOWEST, TRACE_V2
from confdesign.traces import (EIGENVALUES, TraceExpr, eigensplit, heisenberg_trace_check, moments_from_split,
                               omode_expand, oracle_lowest_trace, oracle_vacuum_block_trace, trace_V2,
                               trace_lowest, v1_trace_expand, v1_trace_closed_words, vacuum_block_trace)
from confdesign.virasoro import degenerate_charges, hw_solve

c, e, h = CEH.gens()
VACUUM = {((), ()): 1}


def test_identity_word():
    assert omode_expand(VACUUM) == {(): 1}


def test_zero_mode_of_conformal_vector():
    assert omode_expand({((2,), ()): 1}) == {(("a", 0),): 1}


def test_trace_of_vacuum_is_dimension():
    assert trace_lowest(VACUUM) == TraceExpr(0, {0: 1})


@pytest.mark.parametrize("name, n", [("v2", 2), ("v4", 4)])
def test_reference_traces(name, n):
    v = hw_solve(n)[0]
    assert trace_lowest(v) == TRACE_LOWEST[name]
    assert trace_V2(v) == TRACE_V2[name]


def test_v4_trace_at_two_fermions():
    v = hw_solve(4, c=1, half=True)[0]
    split = eigensplit(trace_V2(v, c=1, half=True), "V2")
    assert split == {1: F(27, 5), F(0): F(22, 5), F(1, 2): F(-59, 5), F(1, 16): F(571, 320)}


def test_eigensplit_of_first_moment():
    split = eigensplit(TraceExpr(0, {1: 1}))
    assert split[F(1, 2)] == F(1, 2) and split[F(1, 16)] == F(1, 16) and split[F(0)] == 0


def test_eigensplit_of_dimension():
    split = eigensplit(TraceExpr(0, {0: 1}))
    assert all(split[l] == 1 for l in EIGENVALUES)


@given(st.lists(st.integers(0, 50), min_size=3, max_size=3))
def test_split_inverts_moments(counts):
    d = dict(zip(EIGENVALUES, counts))
    t = TraceExpr(F(3), {0: F(2), 1: F(-5), 2: F(7, 3), 3: F(1, 9)})
    split = eigensplit(t)
    ms = moments_from_split(d)
    assert t.evaluate(ms) == split[1] + sum(split[l] * d[l] for l in EIGENVALUES)


def test_degree_one_expansion_small_cases():
    assert v1_trace_expand(1) == {((1, 0),): 1}
    assert len(v1_trace_expand(2)) == 3


@pytest.mark.parametrize("l", range(1, 6))
def test_degree_one_expansion_matches_closed_form(l):
    assert v1_trace_expand(l, cyclic=False) == v1_trace_closed_words(l)
    assert len(v1_trace_closed_words(l)) == (1 if l == 1 else l + 1)


@pytest.mark.parametrize("norm", [F(0), F(1), F(2), F(-3, 7)])
def test_abelian_trace(norm):
    assert heisenberg_trace_check(norm) == 24 * norm


def test_abelian_trace_value():
    assert heisenberg_trace_check(F(2)) == 48


# --- truncation independence --------------------------------------------------

@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_ambient_degree_does_not_matter(n):
    v = hw_solve(n, F(37, 4), F(5, 3))[0]
    low = [trace_lowest(v, F(3, 2), F(37, 4), F(5, 3), ambient_degree=b) for b in (8, 10, 12)]
    assert low[0] == low[1] == low[2]
    blocks = [vacuum_block_trace(v, F(37, 4), F(5, 3), ambient_degree=b) for b in (10, 12)]
    assert blocks[0] == blocks[1]


def test_ambient_degree_too_small():
    with pytest.raises(ValueError):
        omode_expand(hw_solve(6, F(3), F(1))[0], ambient_degree=4)


def test_moment_cap():
    for v in hw_solve(8, F(29, 3), F(7, 2)):
        assert max(trace_lowest(v, F(1), F(29, 3), F(7, 2)).alpha) <= 4


# --- oracles ------------------------------------------------------------------

degenerate = set(degenerate_charges(8))
charge = st.fractions(min_value=-40, max_value=40, max_denominator=8).filter(lambda x: x not in degenerate)
weight = st.fractions(min_value=-6, max_value=6, max_denominator=5)


@settings(max_examples=8)
@given(charge, charge, weight, weight)
def test_lowest_trace_against_pbw(cv, ev, h1, h2):
    if cv - ev in degenerate:
        return
    for n in (2, 4, 6):
        for v in hw_solve(n, cv, ev):
            t = trace_lowest(v, h1 + h2, cv, ev)
            assert t.evaluate([h1 ** i for i in range(5)]) == oracle_lowest_trace(v, cv, ev, h1, h2)


@settings(max_examples=8)
@given(charge, charge)
def test_vacuum_block_against_pbw(cv, ev):
    if cv - ev in degenerate:
        return
    for n in (2, 4, 6):
        for v in hw_solve(n, cv, ev):
            block = vacuum_block_trace(v, cv, ev)
            assert block == oracle_vacuum_block_trace(v, cv, ev)
            assert trace_V2(v, cv, ev).evaluate([2 ** i + (i == 0) for i in range(5)]) == block


def test_half_branch_vacuum_block_against_pbw():
    cv = F(7, 3)
    for n in (2, 4, 6, 8):
        for v in hw_solve(n, cv, half=True):
            assert vacuum_block_trace(v, cv, half=True) == oracle_vacuum_block_trace(v, cv, None, half=True)


# --- structural properties ----------------------------------------------------

@given(st.fractions(max_denominator=6), st.fractions(max_denominator=6))
def test_linearity(alpha, beta):
    cv, ev, hv = F(31, 3), F(2), F(5, 4)
    u, w = hw_solve(6, cv, ev)
    combo = {}
    for k in set(u) | set(w):
        x = alpha * u.get(k, 0) + beta * w.get(k, 0)
        if x:
            combo[k] = x
    lhs = trace_lowest(combo, hv, cv, ev) if combo else TraceExpr(0, {})
    rhs = trace_lowest(u, hv, cv, ev).scale(alpha) + trace_lowest(w, hv, cv, ev).scale(beta)
    assert lhs == rhs


def _swap(v):
    return {(b, a): x for (a, b), x in v.items()}


@settings(max_examples=10)
@given(charge, charge, weight, st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=5, max_size=5))
def test_slot_exchange(cv, ev, hv, moments):
    """Exchanging the two factors turns a_0 into b_0 = h - a_0 on W_h."""
    if cv - ev in degenerate:
        return
    for n in (2, 4, 6):
        for v in hw_solve(n, cv, ev):
            direct = trace_lowest(v, hv, cv, ev).evaluate(moments)
            swapped = trace_lowest(_swap(v), hv, cv, cv - ev)
            b_moments = [sum(comb(i, j) * hv ** (i - j) * (-1) ** j * moments[j] for j in range(i + 1))
                         for i in range(5)]
            assert swapped.evaluate(b_moments) == direct
