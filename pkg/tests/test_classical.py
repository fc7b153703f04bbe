from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from supercong.classical import (
    CLAIMS,
    check_1_2,
    check_1_2_printed,
    check_1_4,
    check_c2,
    check_m2,
    eta_coefficient,
    eta_series,
    eta_series_reordered,
    padic_gamma,
    pochhammer_rational,
    q_bridge_errors,
    run_classical,
)
from supercong.exact import rational_mod_prime_power

# q - 4q^3 - 2q^5 + 24q^7 - 11q^9 - 44q^11 + 22q^13 + 8q^15 + 50q^17 + 44q^19,
# the weight 4 level 16 newform (LMFDB 16.4.a.a)
ETA_16 = {1: 1, 3: -4, 5: -2, 7: 24, 9: -11, 11: -44, 13: 22, 15: 8, 17: 50, 19: 44}


def test_eta_coefficients():
    s = eta_series(40)
    for k in range(20):
        assert s[k] == ETA_16.get(k, 0)
    assert all(s[k] == 0 for k in range(0, 41, 2))


def test_eta_two_expansion_orders_agree():
    assert eta_series(60) == eta_series_reordered(60)


def test_eta_truncation_is_stable():
    a, b = eta_series(30), eta_series(38)
    assert a.coeffs == b.coeffs[:31]
    with pytest.raises(IndexError):
        a[31]
    with pytest.raises(ValueError):
        eta_coefficient(11, 7)


def test_eta_ap_is_multiplicative_at_small_primes():
    # Hecke: a_{p^2} = a_p^2 - p^3 for p odd
    s = eta_series(50)
    for p in (3, 5, 7):
        assert s[p * p] == s[p] ** 2 - p**3


def test_pochhammer_basics():
    assert pochhammer_rational(Fraction(1, 2), 0).value == 1
    assert pochhammer_rational(Fraction(1, 2), 3).value == Fraction(15, 8)
    with pytest.raises(ValueError):
        pochhammer_rational(1, -1)


@given(st.fractions(max_denominator=20), st.integers(0, 8), st.integers(0, 8))
def test_pochhammer_splits(a, m, n):
    lhs = pochhammer_rational(a, m + n).value
    rhs = pochhammer_rational(a, m).value * pochhammer_rational(a + m, n).value
    assert lhs == rhs


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_c2(p):
    r = check_c2(p)
    assert r.holds and r.extra["mod_p4"] and r.valuation >= 4
    assert r.rhs == p


def test_c2_value_at_five():
    assert check_c2(5).lhs == Fraction(6105, 4096)


@pytest.mark.parametrize("p,ap", [(5, -2), (7, 24), (11, -44), (13, 22)])
def test_m2_and_sextic(p, ap):
    r = check_m2(p)
    assert r.holds and r.extra["a_p"] == ap
    assert check_1_4(p).holds


@pytest.mark.parametrize("p", [5, 7])
def test_sextic_one_third_sum_mod_p6(p):
    r = check_1_2(p)
    assert r.holds and r.valuation >= 6


def test_printed_constant_fails_at_five():
    r = check_1_2_printed(5)
    assert not r.holds and r.valuation == 4
    assert check_1_2_printed(7).holds  # p = 1 mod 6 is unaffected


def test_gamma_budget():
    with pytest.raises(ValueError):
        check_1_2(11)


def test_padic_gamma_values():
    assert padic_gamma(5, 0, 6).residue == 1
    assert padic_gamma(5, 1, 6).residue == 5**6 - 1
    assert padic_gamma(7, 2, 3).residue == 1
    assert padic_gamma(5, Fraction(1, 3), 6).t == 10417
    with pytest.raises(ValueError):
        padic_gamma(5, Fraction(1, 5), 3)
    with pytest.raises(ValueError):
        padic_gamma(2, 1, 3)


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("x", [Fraction(1, 3), Fraction(1, 2), Fraction(2, 7)])
def test_padic_gamma_reflection(p, x):
    if x.denominator % p == 0:
        return
    N = 4
    mod = p**N
    x0 = rational_mod_prime_power(x, p, 1) or p
    g = padic_gamma(p, x, N).residue * padic_gamma(p, 1 - x, N).residue
    assert g % mod == (-1) ** x0 % mod


def test_run_classical_sorted_and_validated():
    out = run_classical(["m2", "c2"], [7, 5])
    assert [r.id for r in out] == sorted(r.id for r in out)
    assert set(CLAIMS) == {"c2", "m2", "eq1.4", "eq1.2", "eq1.2-printed"}
    with pytest.raises(ValueError):
        run_classical(["nope"], [5])
    with pytest.raises(ValueError):
        check_c2(9)


def test_q_to_one_bridge_shrinks():
    errs = q_bridge_errors(2)
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < Fraction(1, 10**12)
