import pytest
from hypothesis import given, strategies as st

from supercong.factored import (
    FactoredProduct,
    NotFactorwiseDivisible,
    canonical_atom,
    cancel,
    pochhammer,
)
from supercong.lpoly import LaurentPoly
from supercong.upoly import cyclotomic

atom_exps = st.tuples(st.integers(-6, 6), st.integers(-1, 1), st.integers(-1, 1), st.integers(-1, 1)).filter(any)
products = st.lists(st.tuples(atom_exps, st.integers(1, 2)), max_size=4).map(
    lambda xs: _build(xs)
)


def _build(xs):
    out = FactoredProduct.one()
    for e, m in xs:
        out = out * FactoredProduct.from_factor(e) ** m
    return out


def test_pochhammer_examples():
    assert pochhammer((1, 0, 0, 0), 3, 0) == FactoredProduct.one()
    p = pochhammer((1, 0, 0, 0), 3, 2)  # (1-q)(1-q^4)
    assert p.expand() == LaurentPoly({(0,) * 4: 1, (1, 0, 0, 0): -1, (4, 0, 0, 0): -1, (5, 0, 0, 0): 1})
    # (q^-3; q^3)_2 contains 1 - q^0
    assert pochhammer((-3, 0, 0, 0), 3, 2).is_zero()
    with pytest.raises(ValueError):
        pochhammer((1, 0, 0, 0), 3, -1)


def test_canonical_atom_flips_sign():
    sign, atom, unit = canonical_atom((2, -1, 0, 0))  # 1 - q^2/a = -(q^2/a)(1 - a/q^2)
    assert (sign, atom, unit) == (-1, (-2, 1, 0, 0), (2, -1, 0, 0))
    assert canonical_atom((0, 0, 0, 0))[1] is None


@given(atom_exps)
def test_from_factor_expands_to_the_factor(e):
    one = (0, 0, 0, 0)
    assert FactoredProduct.from_factor(e).expand() == LaurentPoly({one: 1, e: -1})


@given(products, products)
def test_expansion_is_multiplicative(f, g):
    assert (f * g).expand() == f.expand() * g.expand()
    assert f.expand() == f.expand_sparse()


@given(products, products)
def test_divide_exact_round_trip(f, g):
    assert (f * g).divide_exact(g) == f
    n, d = cancel(f * g, g)
    assert n.expand() == f.expand() and d == FactoredProduct.one()


def test_divide_exact_refuses():
    with pytest.raises(NotFactorwiseDivisible):
        FactoredProduct.one().divide_exact(FactoredProduct.from_factor((1, 0, 0, 0)))


@given(products, st.integers(2, 12))
def test_cyclotomic_valuation_matches_division(f, n):
    v = f.cyclotomic_valuation(n)
    poly = f.expand().clear_q_units()[0]
    phi = cyclotomic(n)
    count = 0
    while True:
        quo, rem = poly.divrem_by_unipoly_in_q(phi)
        if rem:
            break
        poly, count = quo, count + 1
    assert count == v
    assert f.coprime_to_cyclotomic(n) == (v == 0)


def test_substitute_q_power():
    p = pochhammer((1, 0, 1, 0), 3, 2)  # (bq, bq^4; q^3)
    at_one = p.substitute_q_power("b", 0)
    assert at_one == pochhammer((1, 0, 0, 0), 3, 2)
    assert p.substitute_q_power("b", -1).is_zero()


def test_lcm_and_extent():
    f = FactoredProduct.from_factor((2, 0, 0, 0)) ** 2
    g = FactoredProduct.from_factor((2, 0, 0, 0)) * FactoredProduct.from_factor((3, 0, 0, 0))
    assert f.lcm(g).atoms == {(2, 0, 0, 0): 2, (3, 0, 0, 0): 1}
    assert f.q_extent() == (0, 4)
