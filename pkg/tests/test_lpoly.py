import pytest
from hypothesis import given, strategies as st

from supercong.lpoly import LaurentPoly, bracket_laurent
from supercong.upoly import cyclotomic

exps = st.tuples(*[st.integers(-3, 3)] * 4)
polys = st.dictionaries(exps, st.integers(-5, 5), max_size=6).map(LaurentPoly)


def test_bracket_examples():
    assert bracket_laurent(-1) == LaurentPoly.monomial((-1, 0, 0, 0), -1)
    assert bracket_laurent(0) == 0
    assert bracket_laurent(3) == LaurentPoly({(0, 0, 0, 0): 1, (1, 0, 0, 0): 1, (2, 0, 0, 0): 1})


@given(st.integers(-20, 20))
def test_bracket_definition(x):
    one_minus_q = LaurentPoly({(0, 0, 0, 0): 1, (1, 0, 0, 0): -1})
    qx = LaurentPoly.monomial((x, 0, 0, 0))
    assert bracket_laurent(x) * one_minus_q == 1 - qx


def test_clear_q_units_of_zero():
    z = LaurentPoly({})
    p, m = z.clear_q_units()
    assert p == 0 and m == 0


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)


@given(polys)
def test_clear_then_divide(f):
    p, m = f.clear_q_units()
    assert p.shift((m, 0, 0, 0)) == f
    assert not p or p.min_exp("q") == 0
    phi = cyclotomic(6)
    quo, rem = p.divrem_by_unipoly_in_q(phi)
    assert quo * LaurentPoly.from_unipoly(phi) + rem == p
    assert not rem or rem.max_exp("q") < phi.degree


def test_divrem_rejects_negative_q():
    with pytest.raises(ValueError):
        LaurentPoly.monomial((-1, 0, 0, 0)).divrem_by_unipoly_in_q(cyclotomic(2))


@given(polys, st.integers(-4, 4))
def test_substitute_matches_evaluation(f, j):
    from fractions import Fraction

    g = f.substitute("a", LaurentPoly.var("q", j))
    vals = {"q": Fraction(3, 2), "a": Fraction(3, 2) ** j, "b": Fraction(5, 7), "c": Fraction(-2, 3)}
    assert g.evaluate(vals) == f.evaluate(vals)
    assert g.max_exp("a") == 0 and g.min_exp("a") == 0


def test_substitute_needs_invertible_value():
    f = LaurentPoly.var("a", -1)
    with pytest.raises(ValueError):
        f.substitute("a", LaurentPoly({(0, 0, 0, 0): 1, (1, 0, 0, 0): 1}))


def test_text_form():
    f = LaurentPoly({(2, 1, 0, 0): 1, (0, -1, 0, 0): -3, (0, 0, 0, 0): 1})
    assert str(f) == "q^2*a + 1 - 3*a^-1"
