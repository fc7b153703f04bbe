from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from supercong.exact import as_fraction, is_prime, padic_valuation, rational_mod_prime_power

PRIMES = [2, 3, 5, 7, 11, 13]


def test_valuation_examples():
    assert padic_valuation(Fraction(50, 3), 5) == 2
    assert padic_valuation(Fraction(1, 125), 5) == -3
    assert padic_valuation(Fraction(6105, 4096) - 5, 5) == 4


def test_mod_prime_power_examples():
    assert rational_mod_prime_power(Fraction(1, 3), 5, 2) == 17
    assert rational_mod_prime_power(Fraction(6105, 4096), 5, 3) == 5


def test_errors():
    with pytest.raises(ValueError):
        padic_valuation(0, 5)
    with pytest.raises(ValueError):
        padic_valuation(3, 4)
    with pytest.raises(ValueError):
        rational_mod_prime_power(Fraction(1, 5), 5, 2)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_as_fraction_rejects_float():
    with pytest.raises(TypeError):
        as_fraction(0.5)


nonzero = st.fractions(max_denominator=10**6).filter(lambda x: x != 0)


@given(nonzero, nonzero, st.sampled_from(PRIMES))
def test_valuation_is_additive(x, y, p):
    assert padic_valuation(x * y, p) == padic_valuation(x, p) + padic_valuation(y, p)


@given(nonzero, nonzero, st.sampled_from(PRIMES))
def test_valuation_ultrametric(x, y, p):
    if x + y != 0:
        assert padic_valuation(x + y, p) >= min(padic_valuation(x, p), padic_valuation(y, p))


@given(st.integers(-10**9, 10**9), st.integers(1, 10**6), st.sampled_from(PRIMES), st.integers(1, 6))
def test_residue_is_congruent(a, b, p, r):
    x = Fraction(a, b)
    if x.denominator % p == 0:
        return
    t = rational_mod_prime_power(x, p, r)
    assert 0 <= t < p**r
    assert x == t or padic_valuation(x - t, p) >= r
