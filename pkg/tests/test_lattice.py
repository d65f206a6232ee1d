import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confdesign import lattice as L
from confdesign.rootsys import laplacian_terms


@pytest.fixture(scope="module")
def e8():
    return L.bundled_lattice("E8")


def test_bundled_lattices():
    for name, dim in (("A1", 1), ("E8", 8), ("D16plus", 16), ("BW16", 16)):
        lat = L.bundled_lattice(name)
        assert lat.dim == dim
    assert L.bundled_lattice("A1").gram == ((F(2),),)
    for name in ("E8", "D16plus"):
        lat = L.bundled_lattice(name)
        assert lat.determinant() == 1 and lat.is_even()
    bw = L.bundled_lattice("BW16")
    assert bw.determinant() == 256 and bw.is_even()


def test_unknown_bundled():
    with pytest.raises(L.DomainError):
        L.bundled_lattice("Leech")


def test_gram_roundtrip(e8):
    back = L.parse_gram(L.format_gram(e8), "E8")
    assert back == e8


def test_gram_parse_errors():
    with pytest.raises(L.DomainError):
        L.parse_gram("2\n1 0\n")
    with pytest.raises(L.DomainError):
        L.parse_gram("2\n1 1\n0 1\n")
    with pytest.raises(L.DomainError):
        L.parse_gram("2\n1 2\n2 1\n")
    assert L.parse_gram("# comment\n1\n1/2\n").gram == ((F(1, 2),),)


def test_load_gram_error_names_path(tmp_path):
    missing = tmp_path / "nope.gram"
    with pytest.raises(OSError, match="nope.gram"):
        L.load_gram(missing)
    good = tmp_path / "z2.gram"
    good.write_text("2\n1 0\n0 1\n")
    assert L.load_gram(good).name == "z2"


def test_e8_shells(e8):
    shells = L.iter_norms(e8, [2, 4])
    assert len(shells[F(2)]) == 240 and len(shells[F(4)]) == 2160


def _brute(lat, bound, r):
    out = []
    for x in product(range(-r, r + 1), repeat=lat.dim):
        if lat.norm(x) <= bound:
            out.append(x)
    return sorted(out)


@pytest.mark.parametrize("gram, bound, r", [
    (((2, 1), (1, 2)), 8, 5),
    (((2, -1, 0), (-1, 2, -1), (0, -1, 2)), 6, 4),
    (((3, 1, 1), (1, 3, 1), (1, 1, 5)), 9, 3),
])
def test_short_vectors_brute_force(gram, bound, r):
    lat = L.Lattice(gram)
    assert L.short_vectors(lat, bound) == _brute(lat, bound, r)


def test_short_vectors_parallel(e8):
    assert L.short_vectors(e8, 4, workers=2) == L.short_vectors(e8, 4)


@pytest.mark.parametrize("dim, deg", [(2, 4), (3, 4), (4, 2), (3, 6)])
def test_harmonic_dimensions(dim, deg):
    from math import comb

    want = comb(dim + deg - 1, deg) - (comb(dim + deg - 3, deg - 2) if deg >= 2 else 0)
    assert len(L.harm_basis(dim, deg)) == want


def test_harm_basis_degree_two():
    assert len(L.harm_basis(5, 2)) == 5 * 6 // 2 - 1


def test_harmonic_projection_is_harmonic():
    gram = ((F(2), F(1)), (F(1), F(2)))
    metric = L.Lattice(gram).metric
    for m in L.monomials(2, 4):
        poly = L.expand_layers(L.harmonic_projection({m: F(1)}, 2, 4, gram), 2, gram)
        assert not laplacian_terms(poly, 2, metric)


def test_a1_strength():
    a1 = L.bundled_lattice("A1")
    sh = L.shell_enum(a1, 2)
    assert len(sh) == 2
    # every harmonic polynomial in one variable of degree >= 2 is zero
    assert L.design_strength(sh, 8) == 8


@pytest.mark.slow
@pytest.mark.parametrize("norm", [2, 4])
def test_e8_strength(e8, norm):
    rep = L.design_report(L.shell_enum(e8, norm), 8)
    assert rep.strength == 7
    assert rep.checks[-1].value


def test_d4_roots_are_five_design():
    d4 = L.Lattice(((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2)))
    assert L.design_strength(L.shell_enum(d4, 2), 8) == 5


def test_d16plus_strength():
    lat = L.bundled_lattice("D16plus")
    assert L.design_strength(L.shell_enum(lat, 2), 6) == 3


def test_empty_shell_rejected():
    with pytest.raises(L.DomainError):
        L.design_strength(L.shell_enum(L.Lattice(((2,),)), 1), 4)


def test_unimodular_invariance(e8):
    rng = random.Random(7)
    for _ in range(3):
        u = L.random_unimodular(8, rng)
        lat = e8.transform(u)
        assert lat.determinant() == 1
        shell = L.shell_enum(lat, 2)
        assert len(shell) == 240
        assert L.design_strength(shell, 6) == 6


def test_theta_series(e8):
    theta = L.harmonic_theta(e8, L.constant_poly(8), 2)
    assert theta.coeffs == (1, 240, 2160)


def test_theta_rejects_non_harmonic(e8):
    P = L.HarmonicPoly(8, {(2,) + (0,) * 7: F(1)}, check=False)
    with pytest.raises(L.DomainError):
        L.harmonic_theta(e8, P, 2)


def test_weighted_theta_degree_two_vanishes(e8):
    basis = L.harm_basis(8, 2, e8.metric)
    theta = L.harmonic_theta(e8, basis[0], 3)
    assert all(x == 0 for x in theta.coeffs)


def test_generators_lattice():
    lat = L.gram_from_generators([(1, -1, 0), (0, 1, -1), (1, 0, -1)])
    assert lat.dim == 2 and lat.determinant() == 3


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_shell_sizes_basis_free(seed):
    lat = L.Lattice(((2, 1, 0), (1, 2, 1), (0, 1, 2)))
    u = L.random_unimodular(3, random.Random(seed))
    other = lat.transform(u)
    for norm in (2, 4, 6):
        assert len(L.shell_enum(other, norm)) == len(L.shell_enum(lat, norm))
