import pytest
from hypothesis import given, settings, strategies as st

from supercong.checker import (
    CertificateError,
    CongruenceClaim,
    build_claims,
    check,
    check_identity_2_6,
    check_lemma_2_1,
    check_mixed,
    lemma_2_2_vanishing,
    oracle_check,
    oracle_mixed,
    phi_multiplicity,
    run_claim,
    run_grid,
)
from supercong.checker import divide_by_c_minus_qpower
from supercong.dense import DensePoly
from supercong.factored import FactoredProduct
from supercong.lpoly import LaurentPoly
from supercong.qhyper import Family, SumSpec, lemma_m, term, theorem_spec
from supercong.qhyper.families import MUTATIONS, assemble_terms
from supercong.upoly import ModulusSpec


def claim(case, n, d, modulus, mutation=None):
    return CongruenceClaim(theorem_spec(case, n, d, mutation), modulus)


def test_strong_case_example():
    v = check(claim("thm1.1", 5, 3, ModulusSpec.bracket_times_phi(5)))
    assert v.holds and v.multiplicities == {5: 2} and v.modulus == "[n]Phi_n"


def test_composite_n_uses_compensated_multiplicity():
    v = check(claim("thm1.1", 4, 3, ModulusSpec.q_bracket(4)))
    assert v.holds and v.multiplicities == {2: 1, 4: 1}
    assert v.certificate[0] == {"s": 2, "den_valuation": 2, "offending_atoms": [[[6, 0, 0, 0], 2]]}
    with pytest.raises(CertificateError):
        check(claim("thm1.1", 4, 3, ModulusSpec.q_bracket(4)), strict=True)


def test_non_strong_case_fails_the_stronger_modulus():
    v = check(claim("thm1.1", 4, 3, ModulusSpec.bracket_times_phi(4)))
    assert not v.holds and v.failing_factor == (4, 2)


def test_bump_mutation_reports_failing_factor():
    v = check(claim("thm1.1", 5, 3, ModulusSpec.bracket_times_phi(5), "bump-q-exponent"))
    assert not v.holds and v.failing_factor == (5, 2) and v.multiplicities == {5: 0}


@pytest.mark.parametrize("n,d", [(5, 3), (4, 3), (7, 4), (6, 5), (9, 5)])
@pytest.mark.parametrize("case", ["thm1.1", "thm1.2", "eq1.5"])
def test_routes_agree(case, n, d):
    c = claim(case, n, d, ModulusSpec.bracket_times_phi(n))
    a, b = check(c, "residue"), check(c, "full")
    assert a.holds == b.holds and a.multiplicities == b.multiplicities


def test_mixed_claims_need_their_own_check():
    c = CongruenceClaim(theorem_spec("thm1.1", 5, 3), ModulusSpec.q_bracket(5), ("c", 10))
    with pytest.raises(ValueError):
        check(c)


def test_modulus_monotonicity():
    # holding modulo Phi_n^2 implies holding modulo Phi_n
    for n, d in [(5, 3), (8, 3), (7, 4)]:
        strong = check(claim("thm1.1", n, d, ModulusSpec.phi_power(n, 2)))
        weak = check(claim("thm1.1", n, d, ModulusSpec.phi_power(n, 1)))
        assert strong.holds and weak.holds


def test_symbolic_c_sum_checks_every_divisor():
    spec = SumSpec(Family.LEMMA_2_2, 6, 5, 1, 5)
    whole = check(CongruenceClaim(spec, ModulusSpec.q_bracket(6)))
    parts = [check(CongruenceClaim(spec, ModulusSpec(((s, 1),)))) for s in (2, 3, 6)]
    assert whole.holds and all(p.holds for p in parts)
    assert set(whole.multiplicities) == {2, 3, 6}


@pytest.mark.parametrize("n,d,r", [(5, 3, 1), (7, 3, -1), (7, 4, 1), (8, 3, 1), (8, 5, -1)])
def test_summands_pair_up_modulo_phi_n(n, d, r):
    m = lemma_m(n, d, r)
    spec = SumSpec(Family.LEMMA_2_2, n, d, r, m)
    parts = [assemble_terms([term(spec, k)]) for k in range(m + 1)]
    for k in range(m + 1):
        a, b = parts[k], parts[m - k]
        lcm = a.denominator.lcm(b.denominator)
        lcm = FactoredProduct(1, (0,) * 4, lcm.atoms)
        assert lcm.coprime_to_cyclotomic(n)
        total = lcm.divide_exact(a.denominator).apply_to(a.numerator)
        total = total + lcm.divide_exact(b.denominator).apply_to(b.numerator)
        assert total.is_zero() or phi_multiplicity(total.clear_q_units()[0], n, 1) == 1


@pytest.mark.parametrize("n,d,r", [(5, 3, 1), (7, 3, -1), (9, 4, 1), (10, 3, -1)])
def test_tail_summands_vanish(n, d, r):
    out = lemma_2_2_vanishing(n, d, r)
    assert [k for k, _ in out] == list(range(lemma_m(n, d, r) + 1, n))
    assert all(ok for _, ok in out)


def test_flip_congruence_examples():
    v = check_lemma_2_1(5, 3, 3, 1, 1)
    assert v.holds and v.id == "lemma2.1/n=05/d=3/r=+1/m=03/k=01"
    with pytest.raises(ValueError):
        check_lemma_2_1(5, 3, 2, 1, 1)
    with pytest.raises(ValueError):
        check_lemma_2_1(5, 3, 3, 1, 4)


@settings(max_examples=25)
@given(st.integers(2, 10), st.sampled_from([3, 4, 5]), st.sampled_from([1, -1]), st.data())
def test_flip_congruence_everywhere(n, d, r, data):
    from math import gcd

    if gcd(n, d) != 1 or lemma_m(n, d, r) < 1:
        return
    m = lemma_m(n, d, r)
    k = data.draw(st.integers(0, m))
    assert check_lemma_2_1(n, d, m, r, k).holds


def test_identity_and_mixed_small():
    assert check_identity_2_6(5, 3, 1, 3).holds
    v = check_mixed(5, 3, 1, 3)
    assert v.holds and v.modulus == "(c-q^10)Phi_5"
    assert oracle_mixed(5, 3, 1, 3)


def test_synthetic_division_by_c_minus_qpower():
    names = ("q", "a", "b", "c")
    f = LaurentPoly({(0, 0, 0, 1): 1, (3, 0, 0, 0): -1})  # c - q^3
    g = LaurentPoly({(1, 1, 0, 2): 2, (0, 0, 0, 0): 5, (4, 0, 1, 1): -1})
    quot, rem = divide_by_c_minus_qpower(DensePoly.from_sparse(f * g), 3)
    assert rem.is_zero() and quot.to_sparse() == g
    quot, rem = divide_by_c_minus_qpower(DensePoly.from_sparse(g), 3)
    assert not rem.is_zero()
    assert rem.to_sparse() == g.substitute("c", LaurentPoly.var("q", 3, names))


def test_negative_controls_escalate():
    # some mutation must break each holding claim; the first one usually does
    for it in build_claims("thm1.2", range(2, 9), (3, 4, 5)):
        c = it.claim
        broken = [
            m for m in MUTATIONS
            if not check(CongruenceClaim(theorem_spec("thm1.2", c.spec.n, c.spec.d, m), c.modulus)).holds
        ]
        assert broken, c.id


def test_inflated_modulus_fails_in_non_strong_cases():
    vs = run_grid("thm1.1", range(2, 9), (3, 4, 5), mutation="inflate-modulus")
    assert vs and not any(v.holds for v in vs)
    assert all(v.modulus == "Phi_n^3" for v in vs)


def test_grid_is_sorted_and_filtered():
    vs = run_grid("thm1.1", [2, 3, 4, 5, 6], [3])
    assert [v.n for v in vs] == [2, 4, 5]
    assert [v.id for v in vs] == sorted(v.id for v in vs)
    with pytest.raises(ValueError):
        build_claims("thm9.9", [5], [3])


@pytest.mark.parametrize("n,d", [(4, 3), (5, 3), (3, 4)])
def test_oracle_agrees_small(n, d):
    for case, mod in [("thm1.1", ModulusSpec.bracket_times_phi(n)), ("eq1.5", ModulusSpec.phi_power(n, 2))]:
        for mut in (None, "bump-q-exponent"):
            c = claim(case, n, d, mod, mut)
            assert check(c).holds == oracle_check(c)


def test_run_claim_dispatch():
    items = build_claims("lemma2.1", [5], [3], [1])
    assert all(run_claim(it).holds for it in items)
    assert [it.args[-1] for it in items] == list(range(lemma_m(5, 3, 1) + 1))
