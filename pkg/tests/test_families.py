import pytest
from hypothesis import given, strategies as st

from supercong.checker import _oracle_numerator
from supercong.factored import FactoredProduct, pochhammer
from supercong.lpoly import LaurentPoly
from supercong.qhyper import (
    Family,
    SumSpec,
    assemble,
    lemma_m,
    min_vanishing_index,
    proof_identity_2_6,
    term,
    terms,
    theorem_L,
    theorem_spec,
    vanishing_chain,
)
from supercong.qhyper.families import cross_difference
from supercong.qhyper.vanishing import admissible_triples

ONE = (0, 0, 0, 0)


def test_first_terms():
    t = term(theorem_spec("thm1.1", 5, 3), 0)
    assert t.factor == 1 and t.num == FactoredProduct.one() and t.den == FactoredProduct.one() and t.mono == ONE
    t = term(theorem_spec("thm1.2", 5, 3), 0)
    assert t.factor == LaurentPoly.monomial((-1, 0, 0, 0), -1)


def test_symbolic_c_second_term():
    t = term(SumSpec(Family.LEMMA_2_2, 5, 3, 1, 4), 1)
    assert t.bracket_index == 7
    num = FactoredProduct.one()
    for e in [(1, 1, 0, 0), (1, -1, 0, 0), (1, 0, 1, 0), (1, 0, -1, 0), (1, 0, 0, -1), (1, 0, 0, 0)]:
        num = num * FactoredProduct.from_factor(e)
    den = FactoredProduct.one()
    for e in [(3, 1, 0, 0), (3, -1, 0, 0), (3, 0, 1, 0), (3, 0, -1, 0), (3, 0, 0, 1), (3, 0, 0, 0)]:
        den = den * FactoredProduct.from_factor(e)
    assert t.num == num and t.den == den
    assert t.mono == (3, 0, 0, 1)


def test_term_range_checked():
    with pytest.raises(IndexError):
        term(theorem_spec("thm1.1", 5, 3), 5)


def test_spec_validation():
    with pytest.raises(ValueError):
        SumSpec(Family.THM_1_1, 6, 3, 1, 5)
    with pytest.raises(ValueError):
        SumSpec(Family.THM_1_1, 5, 2, 1, 4)
    with pytest.raises(ValueError):
        SumSpec(Family.THM_2_3, 5, 3, 2, 3)
    with pytest.raises(ValueError):
        SumSpec(Family.LEMMA_2_2, 5, 3, 1, 5)


def test_single_term_sum():
    A = assemble(SumSpec(Family.THM_1_1, 1, 3, 1, 0, (("c", 0),)))
    assert A.numerator.to_sparse() == 1 and A.denominator == FactoredProduct.one()


def test_two_terms_added_directly():
    spec = theorem_spec("thm1.1", 2, 3)
    t0, t1 = terms(spec)
    # t0 has den 1, so the sum over den(t1) is t0 * den(t1) + num(t1)
    direct = t0.numerator_poly() * t1.den.expand() + t1.numerator_poly()
    A = assemble(spec)
    assert A.numerator.to_sparse().clear_q_units()[0] == direct.clear_q_units()[0]


SMALL_SPECS = [
    theorem_spec("thm1.1", 4, 3),
    theorem_spec("thm1.1", 5, 3),
    theorem_spec("thm1.2", 5, 3),
    theorem_spec("thm1.2", 3, 4),
    theorem_spec("eq1.5", 7, 4),
    SumSpec(Family.LEMMA_2_2, 4, 3, 1, lemma_m(4, 3, 1)),
    SumSpec(Family.LEMMA_2_2, 4, 3, 1, 3),
    SumSpec(Family.THM_2_3, 4, 3, -1, 3, (("c", 0),)),
    *proof_identity_2_6(5, 3, 1, 3),
    *proof_identity_2_6(2, 3, 1, 1, c_at_qE=True),
]


@pytest.mark.parametrize("spec", SMALL_SPECS, ids=lambda s: s.key())
def test_horner_assembly_matches_termwise_expansion(spec):
    ts = terms(spec)
    A = assemble(spec)
    assert A.denominator.atoms == ts[-1].den.atoms
    assert A.numerator.to_sparse().clear_q_units()[0] == _oracle_numerator(ts, ts[-1].den)


@pytest.mark.parametrize("n,d", [(5, 3), (4, 3), (7, 4), (6, 5)])
def test_substitution_commutes_with_assembly(n, d):
    full = assemble(theorem_spec("thm1.1", n, d))
    sub_first = assemble(theorem_spec("eq1.5", n, d))
    N = full.numerator.substitute_q_power("b", 0)
    D = full.denominator.substitute_q_power("b", 0)
    assert cross_difference(sub_first, type(full)(N, D, full.num_terms))[0].is_zero()


def test_proof_identity_sizes():
    lhs, rhs = proof_identity_2_6(5, 3, 1, 3)
    assert lhs.M == 3 and len(terms(lhs)) == len(terms(rhs)) == 4
    assert proof_identity_2_6(2, 3, 1, 1)[0].M == 1
    assert theorem_L(4, 3, -1) == 3
    with pytest.raises(ValueError):
        proof_identity_2_6(5, 3, -1, 3)


def test_flip_index_examples():
    assert lemma_m(5, 3, 1) == 3
    assert lemma_m(4, 3, -1) == 3


def test_vanishing_examples():
    assert min_vanishing_index(2, 3, 5) == 2
    assert min_vanishing_index(3, 3, 5) == 5
    assert min_vanishing_index(2, 2, 4) == 2
    assert min_vanishing_index(1, 2, 4) is None


@given(st.integers(-30, 30), st.integers(1, 12), st.integers(2, 30))
def test_vanishing_index_is_least(x, d, n):
    k = min_vanishing_index(x, d, n)
    hits = [j for j in range(n) if (x + d * j) % n == 0]
    assert k == (hits[0] + 1 if hits else None)
    if k is not None:
        p = pochhammer((x, 0, 0, 0), d, k)
        assert p.is_zero() or not p.coprime_to_cyclotomic(n)
        q = pochhammer((x, 0, 0, 0), d, k - 1)
        assert not q.is_zero() and q.coprime_to_cyclotomic(n)


def test_vanishing_chain_all_triples():
    triples = admissible_triples(30)
    assert triples
    for n, d, r in triples:
        c = vanishing_chain(n, d, r)
        assert c.holds and c.matches_closed_forms, (n, d, r)
