import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from almostcyclic.characters import PartitionLabel, irrep_spectrum, mn_character, partition_labels
from almostcyclic.oracles import (
    charpoly_mod,
    matrix_oracle_Wn,
    spectrum_from_charpoly,
    specht_matrix,
    specht_matrix_oracle,
    standard_tableaux,
)
from almostcyclic.permutations import CycleType, Permutation, cycle_type_of
from almostcyclic.spectra import PreconditionError, spectrum_on_Wn

PRIMES = [2, 3, 7, (1 << 61) - 1]

small_matrices = st.integers(1, 6).flatmap(
    lambda d: st.lists(st.lists(st.integers(-5, 5), min_size=d, max_size=d), min_size=d, max_size=d)
)


@given(small_matrices, st.sampled_from(PRIMES))
def test_charpoly_matches_sympy(matrix, prime):
    x = sympy.Symbol("x")
    expected = sympy.Matrix(matrix).charpoly(x).all_coeffs()[::-1]
    got = charpoly_mod(matrix, prime)
    assert list(got) == [int(c) % prime for c in expected]


def test_spectrum_from_charpoly_rejects_non_cyclotomic():
    prime = (1 << 61) - 1
    # x^2 - 2 is not a product of cyclotomic polynomials
    with pytest.raises(ArithmeticError):
        spectrum_from_charpoly((prime - 2, 0, 1), 4, prime, 0)


def test_wn_oracle_examples():
    g = Permutation.parse("(1 2 3 4 5)", 5)
    assert matrix_oracle_Wn(g) == spectrum_on_Wn(CycleType((5,)))
    wn3 = matrix_oracle_Wn(Permutation.parse("(1 2)(3 4)", 6), 3)
    assert wn3.dim == 4
    with pytest.raises(PreconditionError):
        matrix_oracle_Wn(Permutation.parse("(1 2 3)", 6), 3)
    with pytest.raises(ValueError):
        matrix_oracle_Wn(Permutation.identity(13))


@settings(max_examples=60)
@given(st.integers(3, 12).flatmap(lambda n: st.permutations(range(n))), st.sampled_from([0, 2, 3, 5, 7, 11]))
def test_wn_oracle_on_random_elements(images, ell):
    g = Permutation(tuple(images))
    ct = cycle_type_of(g)
    if ell and ct.order % ell == 0:
        return
    assert matrix_oracle_Wn(g, ell) == spectrum_on_Wn(ct, ell)


def test_wn_quotient_dimension():
    for n in (6, 9, 12):
        assert matrix_oracle_Wn(Permutation.identity(n), 3).dim == n - 2
        assert matrix_oracle_Wn(Permutation.identity(n), 5).dim == n - 1


@pytest.mark.parametrize("n", range(1, 8))
def test_standard_tableaux_count(n):
    for lam in partition_labels(n):
        tabs = standard_tableaux(lam)
        assert len(tabs) == lam.dimension()
        for t in tabs:
            assert all(list(r) == sorted(r) for r in t)
            for j in range(len(t[0])):
                col = [r[j] for r in t if len(r) > j]
                assert col == sorted(col)


def _random_perm(rng, n):
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(tuple(images))


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


@pytest.mark.parametrize("parts", [(3, 2), (2, 2, 1), (4, 2), (3, 2, 1), (3, 3), (4, 2, 1), (3, 2, 2)])
def test_specht_matrices_form_a_representation(parts):
    lam = PartitionLabel(parts)
    rng = random.Random(len(parts) * 100 + parts[0])
    for _ in range(5):
        g, h = _random_perm(rng, lam.n), _random_perm(rng, lam.n)
        assert _matmul(specht_matrix(lam, g), specht_matrix(lam, h)) == specht_matrix(lam, g * h)
        trace = sum(specht_matrix(lam, g)[i][i] for i in range(lam.dimension()))
        assert trace == mn_character(lam, cycle_type_of(g))


def test_specht_identity_and_caps():
    lam = PartitionLabel((2, 2))
    assert specht_matrix(lam, Permutation.identity(4)) == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        specht_matrix(PartitionLabel((7, 1)), Permutation.identity(8))
    with pytest.raises(ValueError):
        specht_matrix(lam, Permutation.identity(5))


@pytest.mark.parametrize("ct", [(4,), (3, 1), (5,), (2, 2, 1), (4, 2), (3, 3), (7,), (4, 2, 1)])
def test_specht_spectrum_matches_characters(ct):
    ct = CycleType(ct)
    for lam in partition_labels(ct.n):
        assert specht_matrix_oracle(lam, Permutation.canonical(ct)) == irrep_spectrum(lam, ct)
