import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from almostcyclic.classifier import kronecker_sweep_violations
from almostcyclic.cyclotomic import RootIndex
from almostcyclic.oracles import matrix_oracle_Wn
from almostcyclic.permutations import CycleType, Permutation, PrimePowerClass, enumerate_p_classes, partitions
from almostcyclic.spectra import (
    ALMOST_CYCLIC,
    CYCLIC,
    NOT_ALMOST_CYCLIC,
    EigenSpectrum,
    PreconditionError,
    analyze,
    classify_33e,
    describe_root,
    kronecker,
    kronecker_lemma_violations,
    spectrum_on_Pn,
    spectrum_on_Wn,
    trivial_factors,
)

ELLS = (0, 2, 3, 5, 7, 11)


def coprime_ells(ct):
    return [ell for ell in ELLS if not ell or ct.order % ell]


def spectra(max_m=8, max_dim=5):
    def build(m):
        return st.dictionaries(st.integers(0, m - 1), st.integers(1, 3), min_size=1, max_size=max_dim).map(
            lambda d: EigenSpectrum.from_mapping(m, d)
        )

    return st.integers(1, max_m).flatmap(build)


# --- spectrum basics -------------------------------------------------------------


def test_conductor_is_normalized():
    s = EigenSpectrum.from_mapping(12, {0: 1, 6: 2})
    assert s.m == 2 and s.as_dict() == {0: 1, 1: 2}
    assert s.multiplicity(RootIndex(4, 2)) == 2
    assert s.over(6) == {0: 1, 3: 2}


def test_spectrum_validation():
    with pytest.raises(ValueError):
        EigenSpectrum(3, ((0, -1),))
    with pytest.raises(ValueError):
        EigenSpectrum(3, ((0, 1),), ell=4)
    with pytest.raises(PreconditionError):
        EigenSpectrum(3, ((1, 1),), ell=3)


@given(spectra())
def test_json_roundtrip(s):
    assert EigenSpectrum.from_json(s.to_json()) == s


def test_json_rejects_wrong_dim():
    data = EigenSpectrum.from_mapping(2, {0: 1, 1: 1}).to_json()
    data["dim"] = 5
    with pytest.raises(ValueError):
        EigenSpectrum.from_json(data)


@given(spectra())
def test_negation_is_an_involution(s):
    assert s.negated().negated() == s
    assert s.negated().dim == s.dim


def test_describe_root():
    assert [describe_root(RootIndex(8, j)) for j in (0, 4, 2, 6, 1)] == ["1", "-1", "i", "-i", "zeta(8)^1"]
    assert describe_root(RootIndex(10, 4)) == "zeta(5)^2"


def test_analyze_levels():
    assert analyze(EigenSpectrum.from_mapping(3, {0: 1, 1: 1, 2: 1})).verdict == CYCLIC
    r = analyze(EigenSpectrum.from_mapping(4, {0: 1, 2: 3}))
    assert r.verdict == ALMOST_CYCLIC and r.exceptional == RootIndex(2, 1) and r.deg == 2 and r.max_mult == 3
    assert analyze(EigenSpectrum.from_mapping(2, {0: 2, 1: 2})).verdict == NOT_ALMOST_CYCLIC
    assert analyze(EigenSpectrum.from_mapping(1, {0: 4})).is_scalar


# --- permutation modules ---------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 10))
def test_module_dimensions(n):
    for parts in partitions(n):
        ct = CycleType(parts)
        for ell in coprime_ells(ct):
            assert spectrum_on_Pn(ct, ell).dim == n
            assert spectrum_on_Wn(ct, ell).dim == n - trivial_factors(n, ell)


def test_trivial_factors():
    assert trivial_factors(6, 3) == 2 and trivial_factors(6, 5) == 1 and trivial_factors(6, 0) == 1


def test_semisimple_precondition():
    with pytest.raises(PreconditionError):
        spectrum_on_Pn(CycleType((3, 3)), 3)
    with pytest.raises(PreconditionError):
        spectrum_on_Wn(CycleType((3, 1)), 0, sign_twist=True) if False else spectrum_on_Wn(CycleType((3, 1)), 2, True)
    with pytest.raises(ValueError):
        spectrum_on_Pn(CycleType((3,)), 4)


@pytest.mark.parametrize("n", range(4, 11))
def test_Wn_formula_matches_matrix(n):
    for parts in partitions(n):
        ct = CycleType(parts)
        for ell in coprime_ells(ct):
            assert spectrum_on_Wn(ct, ell) == matrix_oracle_Wn(Permutation.canonical(ct), ell)


def test_sign_twist_negates_odd_elements():
    odd = CycleType((4, 1))
    assert spectrum_on_Wn(odd, 0, sign_twist=True) == spectrum_on_Wn(odd, 0).negated()
    even = CycleType((3, 1, 1))
    assert spectrum_on_Wn(even, 0, sign_twist=True) == spectrum_on_Wn(even, 0)


def test_examples():
    r = analyze(spectrum_on_Wn(CycleType((4, 2))))
    assert r.verdict == ALMOST_CYCLIC and describe_root(r.exceptional) == "-1" and r.max_mult == 2
    assert analyze(spectrum_on_Wn(CycleType((2, 2, 1)))).verdict == NOT_ALMOST_CYCLIC
    assert analyze(spectrum_on_Wn(CycleType((5,)))).verdict == CYCLIC


# --- closed-form classification --------------------------------------------------

# cases in which the closed-form verdict differs from the computed one; all
# have ell dividing n, where the extra trivial factor removes a second 1
KNOWN_DISAGREEMENTS = {
    (5, (2, 2, 1), 5),
    (6, (2, 2, 2), 3),
    (7, (4, 2, 1), 7),
    (11, (8, 2, 1), 11),
    (12, (8, 2, 2), 3),
}


def _sweep():
    for n in range(5, 13):
        for p in (2, 3, 5, 7, 11):
            if p <= n:
                for pc in enumerate_p_classes(n, p):
                    for ell in coprime_ells(pc.base):
                        yield n, pc, ell


def test_closed_form_disagreements_are_frozen():
    found = set()
    for n, pc, ell in _sweep():
        if classify_33e(n, pc, ell).verdict != analyze(spectrum_on_Wn(pc.base, ell)).verdict:
            found.add((n, pc.base.parts, ell))
    assert found == KNOWN_DISAGREEMENTS


def test_closed_form_other_fields_agree_when_verdicts_do():
    for n, pc, ell in _sweep():
        closed = classify_33e(n, pc, ell)
        computed = analyze(spectrum_on_Wn(pc.base, ell))
        if closed.verdict == computed.verdict:
            assert (closed.deg, closed.dim) == (computed.deg, computed.dim)
            if closed.is_almost_cyclic:
                assert closed.max_mult == computed.max_mult
                assert closed.exceptional == computed.exceptional


def test_closed_form_preconditions():
    pc = PrimePowerClass.of(CycleType((3, 1, 1)))
    with pytest.raises(PreconditionError):
        classify_33e(5, pc, 3)
    with pytest.raises(ValueError):
        classify_33e(6, pc, 0)


def test_degree_bound_and_its_equality_cases():
    # deg >= |g| - 1 always; equality exactly when 1 is not an eigenvalue,
    # that is when the number of cycles equals the number of trivial factors
    for n, pc, ell in _sweep():
        r = analyze(matrix_oracle_Wn(Permutation.canonical(pc.base), ell))
        assert r.deg >= pc.order - 1
        assert (r.deg == pc.order - 1) == (len(pc.base.parts) == trivial_factors(n, ell))


# --- Kronecker products ----------------------------------------------------------


@given(spectra(), spectra())
def test_kronecker_is_commutative_and_multiplies_dimensions(a, b):
    p = kronecker(a, b)
    assert p == kronecker(b, a)
    assert p.dim == a.dim * b.dim


@given(spectra(6, 3), spectra(6, 3), spectra(6, 3))
def test_kronecker_is_associative(a, b, c):
    assert kronecker(kronecker(a, b), c) == kronecker(a, kronecker(b, c))


@given(spectra(10, 6), spectra(10, 6))
def test_kronecker_statements_hold(a, b):
    assert kronecker_lemma_violations(a, b) == []


def test_kronecker_characteristic_mismatch():
    with pytest.raises(ValueError):
        kronecker(EigenSpectrum(1, ((0, 1),), 0), EigenSpectrum(1, ((0, 1),), 2))


def test_scalar_factors_are_outside_the_hypotheses():
    scalar = EigenSpectrum.from_mapping(1, {0: 3})
    assert kronecker_lemma_violations(scalar, EigenSpectrum.from_mapping(2, {0: 1, 1: 1})) == []


def _all_spectra(m, dim):
    for combo in itertools.combinations_with_replacement(range(m), dim):
        counts = [0] * m
        for j in combo:
            counts[j] += 1
        yield tuple(counts)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_vectorized_sweep_agrees_with_pairwise_route(m):
    pool = [v for d in (2, 3) for v in _all_spectra(m, d) if sum(1 for x in v if x) > 1]
    expected = set()
    for a, b in itertools.product(pool, repeat=2):
        if sum(a) > sum(b):
            continue
        sa = EigenSpectrum.from_mapping(m, dict(enumerate(a)))
        sb = EigenSpectrum.from_mapping(m, dict(enumerate(b)))
        for label in kronecker_lemma_violations(sa, sb):
            expected.add((label, a, b))
    assert set(kronecker_sweep_violations(m, 2, 3)) == expected


def test_kronecker_statements_are_tight():
    # two cyclic self-inverse factors whose product is almost cyclic with -1 twice
    a = EigenSpectrum.from_mapping(3, {1: 1, 2: 1})
    b = EigenSpectrum.from_mapping(6, {0: 1, 1: 1, 5: 1})
    r = analyze(kronecker(a, b))
    assert r.is_almost_cyclic and r.max_mult == 2 and describe_root(r.exceptional) == "-1"
    assert kronecker_lemma_violations(a, b) == []
