"""Builders for the truncated q-hypergeometric sums and their assembly.

Every summand has the shape ``[x_k] * mono_k * num_k / den_k`` where
``num_k`` and ``den_k`` are products of q-Pochhammer symbols with base q^d.
The generic summand is

    [2dk+r] (aq^r, q^r/a, bq^r, q^r/b, q^r/c, q^r; q^d)_k
            / (aq^d, q^d/a, bq^d, q^d/b, cq^d, q^d; q^d)_k * (c q^{2d-3r})^k

and the two theorem sums are its c = 1 specialisation with r = 1 and r = -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Callable

from ..dense import CyclicResidue, DensePoly
from ..factored import FactoredProduct, pochhammer
from ..lpoly import VARS, LaurentPoly, bracket_laurent

__all__ = [
    "Family",
    "SumSpec",
    "TermRatio",
    "Assembled",
    "MUTATIONS",
    "term",
    "terms",
    "assemble",
    "assemble_residue",
    "assemble_terms",
    "cross_difference",
    "lemma_m",
    "theorem_L",
    "theorem_spec",
    "proof_identity_2_6",
]


class Family(str, Enum):
    THM_1_1 = "thm1.1"
    THM_1_2 = "thm1.2"
    EQ_1_5 = "eq1.5"
    LEMMA_2_2 = "lemma2.2"
    THM_2_3 = "thm2.3"
    PROOF_2_6_LHS = "proof2.6-lhs"
    PROOF_2_6_RHS = "proof2.6-rhs"


# Negative-control mutations, tried in this order by the acceptance harness.
MUTATIONS = ("bump-q-exponent", "shift-bracket", "drop-square")

# (q, a, b, c) exponent vectors of the Pochhammer bases, with r and d symbolic
# via the lambdas below.
_GENERIC_NUM = (
    lambda r, d: (r, 1, 0, 0),
    lambda r, d: (r, -1, 0, 0),
    lambda r, d: (r, 0, 1, 0),
    lambda r, d: (r, 0, -1, 0),
    lambda r, d: (r, 0, 0, -1),
    lambda r, d: (r, 0, 0, 0),
)
_GENERIC_DEN = (
    lambda r, d: (d, 1, 0, 0),
    lambda r, d: (d, -1, 0, 0),
    lambda r, d: (d, 0, 1, 0),
    lambda r, d: (d, 0, -1, 0),
    lambda r, d: (d, 0, 0, 1),
    lambda r, d: (d, 0, 0, 0),
)
_RHS_NUM = (
    lambda r, d: (d - r, 0, 0, 0),
    lambda r, d: (r, 0, 1, 0),
    lambda r, d: (r, 0, -1, 0),
    lambda r, d: (r, 0, 0, -1),
)
_RHS_DEN = (
    lambda r, d: (d, -1, 0, 0),
    lambda r, d: (d, 1, 0, 0),
    lambda r, d: (2 * r, 0, 0, -1),
    lambda r, d: (d, 0, 0, 0),
)


@dataclass(frozen=True)
class SumSpec:
    """A truncated sum sum_{k=0}^{M} of one family.

    ``specialize`` maps a parameter name to an integer j meaning "set it to
    q^j" (j = 0 sets it to 1); parameters not listed stay symbolic.
    """

    family: Family
    n: int
    d: int
    r: int
    M: int
    specialize: tuple[tuple[str, int], ...] = ()
    mutation: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "specialize", tuple(sorted(dict(self.specialize).items())))
        if self.mutation is not None and self.mutation not in MUTATIONS:
            raise ValueError(f"unknown mutation {self.mutation!r}")
        if self.d < 1 or self.n < 1:
            raise ValueError("n and d must be positive")
        if self.M < 0:
            raise ValueError("upper index M must be non-negative")
        fam = self.family
        if fam in (Family.THM_1_1, Family.THM_1_2, Family.EQ_1_5) and self.d < 3:
            raise ValueError("the theorem sums need d >= 3")
        if fam is not Family.PROOF_2_6_RHS and fam is not Family.PROOF_2_6_LHS and gcd(self.n, self.d) != 1:
            raise ValueError(f"gcd({self.n}, {self.d}) != 1")
        if fam is Family.THM_2_3 and self.r not in (1, -1):
            raise ValueError("the squared-modulus sums need r = +1 or -1")
        if fam in (Family.THM_1_1, Family.THM_1_2, Family.EQ_1_5, Family.LEMMA_2_2, Family.THM_2_3) and self.M > self.n - 1:
            raise ValueError("upper index must satisfy M <= n - 1")

    @property
    def symbolic(self) -> frozenset[str]:
        fixed = dict(self.specialize)
        return frozenset(v for v in ("a", "b", "c") if v not in fixed)

    def key(self) -> str:
        spec = ",".join(f"{v}=q^{j}" for v, j in self.specialize)
        mut = f"/mut={self.mutation}" if self.mutation else ""
        return f"{self.family.value}/n={self.n:02d}/d={self.d}/r={self.r:+d}/M={self.M:02d}/{spec}{mut}"


@dataclass(frozen=True)
class TermRatio:
    """One summand ``factor * x^mono * num / den`` (mono is an exponent vector).

    ``factor`` is the q-integer [bracket_index] unless an explicit polynomial
    ``extra`` is given.
    """

    bracket_index: int
    num: FactoredProduct
    den: FactoredProduct
    mono: tuple[int, ...]
    extra: LaurentPoly | None = None

    @property
    def names(self) -> tuple[str, ...]:
        return self.num.names

    @property
    def factor(self) -> LaurentPoly:
        if self.extra is not None:
            return self.extra
        return bracket_laurent(self.bracket_index, self.names)

    def is_zero(self) -> bool:
        if self.num.is_zero():
            return True
        return not self.extra if self.extra is not None else self.bracket_index == 0

    def apply_factor(self, elem):
        if self.extra is not None:
            return elem.mul_sparse(self.extra)
        return elem.mul_qint(self.bracket_index)

    def numerator_poly(self) -> LaurentPoly:
        """factor * mono * expand(num), i.e. the summand times den."""
        if self.num.is_zero():
            return LaurentPoly({}, self.names)
        return self.factor * self.num.expand_sparse().shift(self.mono)


# ---------------------------------------------------------------------------
# parameter helpers


def lemma_m(n: int, d: int, r: int) -> int:
    """The m in [0, n-1] with d*m = -r (mod n)."""
    if gcd(n, d) != 1:
        raise ValueError(f"gcd({n}, {d}) != 1")
    if n == 1:
        return 0
    return (-r * pow(d, -1, n)) % n


def theorem_L(n: int, d: int, r: int) -> int | None:
    """(dn - n - r)/d when integral, else None."""
    num = d * n - n - r
    return num // d if num % d == 0 else None


def theorem_spec(case: str, n: int, d: int, mutation: str | None = None) -> SumSpec:
    fam = Family(case)
    if fam is Family.THM_1_1:
        return SumSpec(fam, n, d, 1, n - 1, (("c", 0),), mutation)
    if fam is Family.THM_1_2:
        return SumSpec(fam, n, d, -1, n - 1, (("c", 0),), mutation)
    if fam is Family.EQ_1_5:
        return SumSpec(fam, n, d, 1, n - 1, (("b", 0), ("c", 0)), mutation)
    raise ValueError(f"{case!r} is not a theorem family")


def proof_identity_2_6(n: int, d: int, r: int, M: int, c_at_qE: bool = False) -> tuple[SumSpec, SumSpec]:
    """Both sides of the Watson-specialised identity behind the mixed modulus.

    With ``c_at_qE`` the parameter c is set to q^{dn-n}; otherwise it stays
    symbolic (the congruence modulo (c - q^{dn-n}) Phi_n(q)).
    """
    if r not in (1, -1):
        raise ValueError("r must be +1 or -1")
    if n <= 1:
        raise ValueError("n must exceed 1")
    if gcd(n, d) != 1 or (n + r) % d != 0:
        raise ValueError(f"need gcd(n, d) = 1 and n = -r (mod d); got n={n}, d={d}, r={r}")
    L = theorem_L(n, d, r)
    if M not in (L, n - 1):
        raise ValueError(f"M must be (dn-n-r)/d = {L} or n-1 = {n - 1}")
    spec = (("c", d * n - n),) if c_at_qE else ()
    return (
        SumSpec(Family.PROOF_2_6_LHS, n, d, r, M, spec),
        SumSpec(Family.PROOF_2_6_RHS, n, d, r, M, spec),
    )


# ---------------------------------------------------------------------------
# terms


def _specialize(p: FactoredProduct, spec: SumSpec) -> FactoredProduct:
    for var, j in spec.specialize:
        p = p.substitute_q_power(var, j)
    return p


def _specialize_mono(mono: tuple[int, ...], spec: SumSpec) -> tuple[int, ...]:
    m = list(mono)
    for var, j in spec.specialize:
        i = VARS.index(var)
        m[0] += m[i] * j
        m[i] = 0
    return tuple(m)


def _poch_product(bases, r, d, k) -> FactoredProduct:
    out = FactoredProduct.one()
    for base in bases:
        out = out * pochhammer(base(r, d), d, k)
    return out


def term(spec: SumSpec, k: int) -> TermRatio:
    """The exact k-th summand of ``spec``."""
    if not 0 <= k <= spec.M:
        raise IndexError(f"k = {k} outside 0..{spec.M}")
    n, d, r = spec.n, spec.d, spec.r
    mut = spec.mutation
    if spec.family is Family.PROOF_2_6_RHS:
        L = theorem_L(n, d, r)
        pre_num = pochhammer((r, 0, 0, 0), d, L) * pochhammer((d - r, 0, 0, 0), d, L)
        pre_den = pochhammer((d, 0, -1, 0), d, L) * pochhammer((d, 0, 1, 0), d, L)
        num = pre_num * _poch_product(_RHS_NUM, r, d, k)
        den = pre_den * _poch_product(_RHS_DEN, r, d, k)
        mono = (d * k, 0, 0, 0)
        bracket = d * n - n
    else:
        num = _poch_product(_GENERIC_NUM, r, d, k)
        den = _poch_product(_GENERIC_DEN, r, d, k)
        qexp = 2 * d - 3 * r
        if mut == "bump-q-exponent":
            qexp += 1
        mono = (qexp * k, 0, 0, k)
        bracket = 2 * d * k + r
        if mut == "shift-bracket":
            bracket += 1
        if mut == "drop-square":
            num = num.divide_exact(pochhammer((r, 0, 0, 0), d, k)) if k else num
            num = num * pochhammer((r + 1, 0, 0, 0), d, k)
    return TermRatio(bracket, _specialize(num, spec), _specialize(den, spec), _specialize_mono(mono, spec))


def terms(spec: SumSpec) -> list[TermRatio]:
    return [term(spec, k) for k in range(spec.M + 1)]


# ---------------------------------------------------------------------------
# assembly


@dataclass
class Assembled:
    """The sum as ``numerator / denominator`` with a common factored denominator."""

    numerator: object  # DensePoly or CyclicResidue
    denominator: FactoredProduct
    num_terms: int

    def numerator_laurent(self) -> LaurentPoly:
        return self.numerator.to_sparse()


def _horner(ts: list[TermRatio], lift_one: Callable[[], object]):
    """Return (P, last) with sum_k ts[k] = P / den(last), last = final nonzero index."""
    last = max((k for k, t in enumerate(ts) if not t.is_zero()), default=None)
    zero = (0,) * len(ts[0].names)
    if last is None:
        return lift_one().mul_term(0, zero), 0
    P = ts[last].apply_factor(lift_one())
    Q = lift_one()
    for k in range(last, 0, -1):
        cur, prev = ts[k], ts[k - 1]
        A = cur.num.divide_exact(prev.num)
        B = cur.den.divide_exact(prev.den)
        dmono = tuple(x - y for x, y in zip(cur.mono, prev.mono))
        Q = B.apply_to(Q)
        P = A.apply_to(P).mul_term(1, dmono)
        if not prev.is_zero():
            P = P + prev.apply_factor(Q)
    first = ts[0]
    P = first.num.apply_to(P).mul_term(1, first.mono)
    return P, last


def _common_tail(ts: list[TermRatio], last: int) -> FactoredProduct:
    return ts[-1].den.divide_exact(ts[last].den)


def assemble_terms(ts: list[TermRatio], lift_one: Callable[[], object] | None = None, clear: bool = True) -> Assembled:
    """Common-denominator assembly of a list of nested summands.

    The denominator is den of the last summand; every den_k divides it
    factorwise because the Pochhammer prefixes nest.
    """
    names = ts[0].names
    if lift_one is None:
        lift_one = lambda: DensePoly.one(names)  # noqa: E731
    P, last = _horner(ts, lift_one)
    if last != len(ts) - 1:
        P = _common_tail(ts, last).apply_to(P)
    D = ts[-1].den
    if clear and isinstance(P, DensePoly):
        P, shift = P.clear_q_units()
        D = D.times_monomial((-shift,) + (0,) * (len(names) - 1))
    return Assembled(P, D, len(ts))


def assemble(spec: SumSpec) -> Assembled:
    """Exact assembly: sum = N / D with D = den(M) and N free of negative q-powers."""
    return assemble_terms(terms(spec))


def assemble_residue(spec: SumSpec, s: int, e: int) -> Assembled:
    """The same numerator reduced into Z[a,b,c][q] / ((q^s-1)^e)."""
    return assemble_terms(terms(spec), lambda: CyclicResidue.one(s, e))


def cross_difference(left: Assembled, right: Assembled):
    """Numerator of left - right over the atomwise lcm of both denominators."""
    lcm = left.denominator.lcm(right.denominator)
    lcm = FactoredProduct(1, (0,) * len(lcm.names), lcm.atoms, lcm.names)
    lpart = lcm.divide_exact(left.denominator).apply_to(left.numerator)
    rpart = lcm.divide_exact(right.denominator).apply_to(right.numerator)
    return lpart - rpart, lcm
