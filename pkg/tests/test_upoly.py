import pytest
from hypothesis import given, strategies as st

from supercong.upoly import (
    ModulusSpec,
    UniPoly,
    cyclotomic,
    divisors,
    euler_phi,
    is_strong_case,
    modulus_expand,
    modulus_for_theorem,
    poly_gcd,
    q_integer,
)


def test_small_cyclotomics():
    assert str(cyclotomic(1)) == "q - 1"
    assert str(cyclotomic(6)) == "q^2 - q + 1"
    assert str(cyclotomic(12)) == "q^4 - q^2 + 1"


def test_phi_105_has_a_minus_two():
    p = cyclotomic(105)
    assert p.degree == 48
    assert -2 in p.coeffs
    assert set(p.coeffs) == {-2, -1, 0, 1}


@given(st.integers(1, 120))
def test_product_over_divisors(n):
    prod = UniPoly([1])
    for d in divisors(n):
        prod = prod * cyclotomic(d)
    assert prod == UniPoly([-1] + [0] * (n - 1) + [1])
    assert cyclotomic(n).degree == euler_phi(n)


@given(st.integers(2, 60))
def test_bracket_is_product_of_proper_cyclotomics(n):
    m = ModulusSpec.q_bracket(n)
    assert modulus_expand(m) == q_integer(n)
    assert m.degree() == n - 1


@given(st.integers(1, 40), st.integers(1, 40))
def test_distinct_cyclotomics_are_coprime(a, b):
    if a != b:
        assert poly_gcd(cyclotomic(a), cyclotomic(b)).degree == 0


def test_modulus_for_theorem_examples():
    assert modulus_for_theorem(5, 3, "thm1.1").factors == ((5, 2),)
    assert modulus_for_theorem(4, 3, "thm1.1").factors == ((2, 1), (4, 1))
    assert modulus_for_theorem(4, 3, "thm1.2").factors == ((2, 1), (4, 2))
    assert is_strong_case(5, 3, "thm1.1") and not is_strong_case(4, 3, "thm1.1")


def test_modulus_for_theorem_rejects():
    with pytest.raises(ValueError):
        modulus_for_theorem(6, 3, "thm1.1")
    with pytest.raises(ValueError):
        modulus_for_theorem(5, 2, "thm1.1")
    with pytest.raises(ValueError):
        modulus_for_theorem(5, 3, "thm9")


def test_modulus_spec_validation_and_weakening():
    with pytest.raises(ValueError):
        ModulusSpec(((3, 1), (3, 2)))
    m = ModulusSpec.bracket_times_phi(6)
    assert m.label == "[n]Phi_n"
    assert m.describe() == "Phi_2*Phi_3*Phi_6^2"
    assert m.weakened(6).factors == ModulusSpec.q_bracket(6).factors
    assert ModulusSpec.from_pairs([(5, 1), (5, 1)]).factors == ((5, 2),)


def test_unipoly_division():
    f = UniPoly([1, 2, 3, 4])
    g = cyclotomic(3)
    q, r = f.divmod(g)
    assert q * g + r == f
    assert r.degree < g.degree
    assert f(2) == 1 + 4 + 12 + 32
