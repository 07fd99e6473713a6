import math

import pytest
from hypothesis import given, strategies as st

from almostcyclic.characters import (
    AnCharacter,
    CharacterError,
    PartitionLabel,
    an_character_value,
    an_characters,
    character_table,
    character_table_json,
    irrep_spectrum,
    mn_character,
    partition_labels,
)
from almostcyclic.cyclotomic import CycInt, sqrt_of_discriminant
from almostcyclic.permutations import AnClassLabel, CycleType, an_classes, partitions, splits_in_An
from almostcyclic.spectra import analyze, describe_root, spectrum_on_Wn


def an_class_size(cls):
    size = cls.cycle_type.class_size()
    return size // 2 if cls.split_part else size


@pytest.mark.parametrize("n", range(1, 9))
def test_symmetric_orthogonality(n):
    table = character_table(n)
    classes = [CycleType(p) for p in partitions(n)]
    order = math.factorial(n)
    labels = list(table)
    for a in labels:
        for b in labels:
            inner = sum(ct.class_size() * table[a][ct] * table[b][ct] for ct in classes)
            assert inner == (order if a == b else 0)
    for c1 in classes:
        for c2 in classes:
            col = sum(table[lam][c1] * table[lam][c2] for lam in labels)
            assert col == (order // c1.class_size() if c1 == c2 else 0)


@pytest.mark.parametrize("n", range(1, 11))
def test_dimensions(n):
    labels = partition_labels(n)
    assert sum(lam.dimension() ** 2 for lam in labels) == math.factorial(n)
    for lam in labels:
        assert mn_character(lam, CycleType((1,) * n)) == lam.dimension()


def test_known_values():
    assert mn_character(PartitionLabel((2, 1)), CycleType((3,))) == -1
    assert mn_character(PartitionLabel((3, 1, 1)), CycleType((5,))) == 1
    assert mn_character(PartitionLabel((4, 1)), CycleType((2, 2, 1))) == 0
    assert mn_character(PartitionLabel((3, 3)), CycleType((3, 3))) == 2


@pytest.mark.parametrize("n", range(2, 9))
def test_sign_twist_is_conjugation(n):
    for lam in partition_labels(n):
        for p in partitions(n):
            ct = CycleType(p)
            assert mn_character(lam.conjugate(), ct) == ct.sign * mn_character(lam, ct)


@pytest.mark.parametrize("n", range(3, 8))
def test_alternating_orthogonality(n):
    chars = an_characters(n)
    classes = an_classes(n)
    order = math.factorial(n) // 2
    assert len(chars) == len(classes)
    values = {chi: [an_character_value(chi, c) for c in classes] for chi in chars}
    for a in chars:
        for b in chars:
            inner = sum(
                (v * w.conjugate()).scale(an_class_size(c))
                for v, w, c in zip(values[a], values[b], classes)
            )
            assert inner == (order if a == b else 0)


def test_a5_split_values():
    chi = AnCharacter(PartitionLabel((3, 1, 1)), "+")
    a = AnClassLabel(CycleType((5,)), "A")
    root5 = sqrt_of_discriminant(5)
    assert an_character_value(chi, a) == (CycInt.integer(1) + root5).exact_div(2)
    assert an_character_value(chi, a.swapped()) == (CycInt.integer(1) - root5).exact_div(2)
    assert an_character_value(chi.partner(), a) == an_character_value(chi, a.swapped())
    assert chi.degree == 3


def test_an_character_validation():
    with pytest.raises(ValueError):
        AnCharacter(PartitionLabel((2, 2)))
    with pytest.raises(ValueError):
        AnCharacter(PartitionLabel((3, 1)), "+")
    assert AnCharacter(PartitionLabel((1, 1, 1, 1))).origin == PartitionLabel((4,))
    with pytest.raises(ValueError):
        an_character_value(AnCharacter(PartitionLabel((4, 1))), AnClassLabel(CycleType((2, 1, 1))))


def test_partition_label():
    lam = PartitionLabel.parse("[3,1^2]")
    assert lam.parts == (3, 1, 1) and lam.is_self_conjugate()
    assert lam.diagonal_hooks() == (5,)
    assert PartitionLabel((4, 2, 1)).conjugate() == PartitionLabel((3, 2, 1, 1))
    assert str(lam) == "(3,1,1)"
    with pytest.raises(ValueError):
        PartitionLabel((1, 2))


@given(st.integers(1, 9).flatmap(lambda n: st.sampled_from(list(partitions(n)))))
def test_hook_length_formula_vs_conjugate(parts):
    lam = PartitionLabel(parts)
    assert lam.dimension() == lam.conjugate().dimension()
    assert lam.conjugate().conjugate() == lam


@pytest.mark.parametrize("n", range(5, 11))
def test_standard_character_spectrum_is_Wn(n):
    lam = PartitionLabel((n - 1, 1))
    for p in partitions(n):
        ct = CycleType(p)
        m = ct.order
        if m == 1 or not _prime_power(m):
            continue
        assert irrep_spectrum(lam, ct) == spectrum_on_Wn(ct)


def _prime_power(m):
    p = min(d for d in range(2, m + 1) if m % d == 0)
    while m % p == 0:
        m //= p
    return m == 1


def test_spectrum_examples():
    r = analyze(irrep_spectrum(AnCharacter(PartitionLabel((3, 3))), AnClassLabel(CycleType((3, 3)))))
    assert (r.deg, describe_root(r.exceptional), r.max_mult) == (3, "1", 3)
    r = analyze(irrep_spectrum(PartitionLabel((3, 1, 1)), CycleType((5,))))
    assert (r.deg, describe_root(r.exceptional), r.max_mult) == (5, "1", 2)
    with pytest.raises(ValueError):
        irrep_spectrum(PartitionLabel((4, 2)), CycleType((3, 2, 1)))


@pytest.mark.parametrize("n", range(5, 9))
def test_split_characters_on_split_classes_are_spectra(n):
    for chi in an_characters(n):
        for cls in an_classes(n):
            if cls.order > 1 and _prime_power(cls.order):
                spec = irrep_spectrum(chi, cls)
                assert spec.dim == chi.degree
                if chi.split_part and cls.split_part:
                    assert irrep_spectrum(chi.partner(), cls) == irrep_spectrum(chi, cls.swapped())


def test_split_class_needs_a_tag():
    with pytest.raises(ValueError):
        irrep_spectrum(AnCharacter(PartitionLabel((3, 1, 1)), "+"), CycleType((5,)))
    assert splits_in_An(CycleType((5,)))


def test_character_table_json():
    data = character_table_json(5, "An")
    assert data["group"] == "A_5" and len(data["rows"]) == 5
    assert data["rows"]["(5)"]["[1^5]"] == {"m": 1, "coeffs": [1]}
    assert len(character_table_json(4)["rows"]) == 5
    with pytest.raises(ValueError):
        character_table_json(4, "Dn")
    assert issubclass(CharacterError, ArithmeticError)
