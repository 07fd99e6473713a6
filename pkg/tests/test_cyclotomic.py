import cmath
import math

import pytest
import sympy
from hypothesis import given, strategies as st

from almostcyclic.cyclotomic import (
    CycInt,
    RootIndex,
    as_integer,
    cyclotomic_polynomial,
    euler_phi,
    inner_dft,
    poly_divmod,
    poly_mul,
    sqrt_of_discriminant,
)

CONDUCTORS = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15]


def elements(m):
    return st.lists(st.integers(-6, 6), min_size=m, max_size=m).map(lambda d: CycInt.from_exponents(m, d))


any_element = st.sampled_from(CONDUCTORS).flatmap(elements)


@pytest.mark.parametrize("m", range(1, 31))
def test_cyclotomic_polynomial_matches_sympy(m):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(m)) == [int(c) for c in expected]
    assert euler_phi(m) == int(sympy.totient(m))


@given(st.lists(st.integers(-9, 9), max_size=8), st.sampled_from([2, 3, 4, 6, 10]))
def test_polynomial_division_identity(a, m):
    b = cyclotomic_polynomial(m)
    q, r = poly_divmod(a, b)
    recombined = [0] * max(len(a), len(poly_mul(q, b)), len(r))
    for i, c in enumerate(poly_mul(q, b)):
        recombined[i] += c
    for i, c in enumerate(r):
        recombined[i] += c
    padded = list(a) + [0] * (len(recombined) - len(a))
    assert recombined == padded
    assert len(r) < len(b)


def test_division_requires_monic():
    with pytest.raises(ValueError):
        poly_divmod((1, 1), (1, 2))


@given(any_element, any_element, any_element)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a


@given(any_element, any_element)
def test_complex_embedding_is_a_ring_homomorphism(a, b):
    assert abs(complex(a + b) - (complex(a) + complex(b))) < 1e-8
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-6


@given(st.sampled_from(CONDUCTORS), st.integers(-40, 40))
def test_zeta_embeds_as_root_of_unity(m, j):
    assert abs(complex(CycInt.zeta(m, j)) - cmath.exp(2j * cmath.pi * j / m)) < 1e-9


@given(any_element, st.sampled_from([1, 2, 3, 4]))
def test_lift_then_descend_roundtrip(a, k):
    big = a.lift(a.m * k)
    assert big == a
    assert big.descend(a.m).coeffs == a.coeffs


def test_descend_detects_non_members():
    assert CycInt.zeta(12).descend(4) is None
    assert (CycInt.zeta(12, 3)).descend(4) == CycInt.zeta(4)
    with pytest.raises(ValueError):
        CycInt.zeta(12).descend(5)
    with pytest.raises(ValueError):
        CycInt.zeta(6).lift(9)


def test_minimal_conductor():
    # zeta_15^5 lives in Z[zeta_3]; -zeta_6^2 - zeta_6^4 = 1
    assert CycInt.zeta(15, 5).minimal_conductor().m == 3
    assert (-CycInt.zeta(6, 2) - CycInt.zeta(6, 4)).minimal_conductor() == CycInt.integer(1)
    assert CycInt.zeta(6, 2).minimal_conductor().m == 3


@given(any_element)
def test_hash_is_consistent_with_equality(a):
    assert hash(a.lift(a.m * 2)) == hash(a)


@given(any_element, st.integers(1, 60))
def test_galois_action(a, k):
    if math.gcd(k, a.m) != 1:
        with pytest.raises(ValueError):
            a.galois(k)
        return
    b = CycInt.zeta(a.m, 1) * a
    assert b.galois(k) == CycInt.zeta(a.m, k) * a.galois(k)
    assert abs(complex(a.conjugate()) - complex(a).conjugate()) < 1e-8


def test_as_integer_and_str():
    assert as_integer(CycInt.zeta(3) + CycInt.zeta(3, 2)) == -1
    assert as_integer(CycInt.zeta(4)) is None
    assert str(CycInt.integer(5)) == "5"
    assert str(CycInt.zeta(5, 1) - CycInt.zeta(5, 2)) == "z5 - z5^2"


def test_exact_div():
    assert CycInt.zeta(7).scale(6).exact_div(3) == CycInt.zeta(7).scale(2)
    with pytest.raises(ArithmeticError):
        CycInt.zeta(7).scale(5).exact_div(3)
    with pytest.raises(ZeroDivisionError):
        CycInt.zeta(7).exact_div(0)


def test_constructor_validation():
    with pytest.raises(ValueError):
        CycInt(4, (1, 2, 3))
    with pytest.raises(ValueError):
        CycInt(0, ())
    with pytest.raises(TypeError):
        CycInt.coerce(1.5)


@given(any_element)
def test_json_roundtrip(a):
    assert CycInt.from_json(a.to_json()).coeffs == a.coeffs


@pytest.mark.parametrize("q", [5, -3, -7, 13, -11, 21, -15, 17, 45, -27, 1, 9])
def test_sqrt_of_discriminant(q):
    r = sqrt_of_discriminant(q)
    assert r * r == q
    assert abs(complex(r) ** 2 - q) < 1e-8


@pytest.mark.parametrize("q", [3, 2, 8, -5])
def test_sqrt_of_discriminant_rejects(q):
    with pytest.raises(ValueError):
        sqrt_of_discriminant(q)


@given(st.integers(1, 12).flatmap(lambda m: st.lists(st.integers(0, 4), min_size=m, max_size=m)))
def test_inner_dft_recovers_multiplicities(mults):
    # the trace of diag(zeta^j with multiplicity mults[j]) on its k-th power
    m = len(mults)
    traces = [sum((CycInt.zeta(m, j * k).scale(c) for j, c in enumerate(mults)), CycInt.integer(0)) for k in range(m)]
    for j in range(m):
        assert inner_dft(traces, j).exact_div(m) == mults[j]
    with pytest.raises(ValueError):
        inner_dft(traces, RootIndex(m + 1, 0))


def test_root_index():
    r = RootIndex(12, 15)
    assert r.j == 3 and r.order == 4
    assert r.reduced() == RootIndex(4, 1)
    assert r.same_root(RootIndex(8, 2))
    assert str(r) == "zeta(12)^3"
    assert RootIndex.parse(" zeta(12)^-9 ") == r
    assert r.to_cycint() == CycInt.zeta(4)
    with pytest.raises(ValueError):
        RootIndex.parse("zeta12^3")
    with pytest.raises(ValueError):
        RootIndex(0, 1)
