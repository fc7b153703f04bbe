"""Watson's terminating 8phi7 -> 4phi3 transformation, both sides exact.

With f = q^{-N} the ratio of infinite products in front of the 4phi3 telescopes
to the finite prefactor

    (Aq, Aq/DE; q)_N / (Aq/D, Aq/E; q)_N,

because (x; q)_inf / (x q^N; q)_inf = (x; q)_N and Aq/F = A q^{1+N}.

The very-well-poised factor (q sqrt(A), -q sqrt(A); q)_k / (sqrt(A), -sqrt(A); q)_k
equals (1 - A q^{2k}) / (1 - A), so no square root ever enters the ring.

Parameters are exponent vectors in some ring whose first variable is q; the
generic check uses the private ring (q, A, B, C, D, E), and the proof of the
mixed-modulus congruence maps them into (q, a, b, c) with base q^d.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from ..factored import FactoredProduct, pochhammer
from ..lpoly import VARS, LaurentPoly, bracket_laurent
from .families import Assembled, TermRatio, assemble_terms, cross_difference

__all__ = [
    "WATSON_NAMES",
    "WatsonParams",
    "WatsonResult",
    "SingularSpecialization",
    "PointValue",
    "watson_lhs_terms",
    "watson_rhs_terms",
    "watson_sides",
    "watson_check_symbolic",
    "watson_check_random",
    "watson_degree_bound",
    "watson_prefactor",
    "sides_agree",
    "with_bracket",
]

WATSON_NAMES: tuple[str, ...] = ("q", "A", "B", "C", "D", "E")


class SingularSpecialization(ArithmeticError):
    """A denominator atom vanished identically at the sampled point."""


def _add(*vs):
    return tuple(map(sum, zip(*vs)))


def _neg(v):
    return tuple(-x for x in v)


@dataclass(frozen=True)
class WatsonParams:
    """The six Watson parameters as monomials, plus the base q^step."""

    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]
    D: tuple[int, ...]
    E: tuple[int, ...]
    F: tuple[int, ...]
    step: int
    names: tuple[str, ...]
    terms: int  # number of summands built on each side
    length: int  # prefactor length; F = q^{-step*length} in the terminating case

    @classmethod
    def generic(cls, N: int) -> "WatsonParams":
        if N < 0:
            raise ValueError("N must be non-negative")
        unit = lambda i: tuple(int(j == i) for j in range(6))  # noqa: E731
        return cls(unit(1), unit(2), unit(3), unit(4), unit(5), (-N, 0, 0, 0, 0, 0), 1, WATSON_NAMES, N + 1, N)

    @classmethod
    def proof_map(cls, n: int, d: int, r: int, M: int | None = None, c_symbolic: bool = True) -> "WatsonParams":
        """A = q^r, B = aq^r, C = q^r/a, D = bq^r, E = q^r/b in base q^d.

        F is q^r/c (c symbolic, summed up to M) or q^{r-dn+n} (terminating).
        """
        L, rem = divmod(d * n - n - r, d)
        if rem:
            raise ValueError("need n = -r (mod d)")
        F = (r, 0, 0, -1) if c_symbolic else (-d * L, 0, 0, 0)
        count = (M if M is not None else L) + 1
        return cls((r, 0, 0, 0), (r, 1, 0, 0), (r, -1, 0, 0), (r, 0, 1, 0), (r, 0, -1, 0), F, d, VARS, count, L)

    @property
    def q_step(self) -> tuple[int, ...]:
        return (self.step,) + (0,) * (len(self.names) - 1)


def _poch(base, p: WatsonParams, k: int) -> FactoredProduct:
    return pochhammer(base, p.step, k, p.names)


def watson_lhs_terms(p: WatsonParams) -> list[TermRatio]:
    q = p.q_step
    Aq = _add(p.A, q)
    num_bases = (p.A, p.B, p.C, p.D, p.E, p.F)
    den_bases = (q,) + tuple(_add(Aq, _neg(x)) for x in (p.B, p.C, p.D, p.E, p.F))
    z = _add(p.A, p.A, q, q, *(_neg(x) for x in (p.B, p.C, p.D, p.E, p.F)))
    one = (0,) * len(p.names)
    wp = FactoredProduct.from_factor(p.A, p.names)
    out = []
    for k in range(p.terms):
        num = FactoredProduct.one(p.names)
        for b in num_bases:
            num = num * _poch(b, p, k)
        den = wp
        for b in den_bases:
            den = den * _poch(b, p, k)
        extra = LaurentPoly({one: 1, _add(p.A, tuple(2 * k * x for x in q)): -1}, p.names)
        out.append(TermRatio(1, num, den, tuple(k * x for x in z), extra))
    return out


def watson_prefactor(p: WatsonParams) -> tuple[FactoredProduct, FactoredProduct]:
    N = p.length
    Aq = _add(p.A, p.q_step)
    num = _poch(Aq, p, N) * _poch(_add(Aq, _neg(p.D), _neg(p.E)), p, N)
    den = _poch(_add(Aq, _neg(p.D)), p, N) * _poch(_add(Aq, _neg(p.E)), p, N)
    return num, den


def watson_rhs_terms(p: WatsonParams, prefactor: bool = True) -> list[TermRatio]:
    q = p.q_step
    Aq = _add(p.A, q)
    num_bases = (_add(Aq, _neg(p.B), _neg(p.C)), p.D, p.E, p.F)
    den_bases = (q, _add(Aq, _neg(p.B)), _add(Aq, _neg(p.C)), _add(p.D, p.E, p.F, _neg(p.A)))
    if prefactor:
        pre_num, pre_den = watson_prefactor(p)
    else:
        pre_num = pre_den = FactoredProduct.one(p.names)
    out = []
    for k in range(p.terms):
        num, den = pre_num, pre_den
        for b in num_bases:
            num = num * _poch(b, p, k)
        for b in den_bases:
            den = den * _poch(b, p, k)
        out.append(TermRatio(1, num, den, tuple(k * x for x in q)))
    return out


# ---------------------------------------------------------------------------
# evaluation at a rational point (q stays symbolic)


class PointValue:
    """A Laurent polynomial in q over Q: the image of a ring element under
    parameter -> rational value.  Supports the kernel protocol used by the
    factored products and the Horner assembly."""

    __slots__ = ("coeffs", "off", "values", "names")

    def __init__(self, coeffs: list, off: int, values: tuple, names: tuple[str, ...]):
        self.coeffs = coeffs
        self.off = off
        self.values = values
        self.names = names

    @classmethod
    def one(cls, values: Sequence[Fraction], names: tuple[str, ...]) -> "PointValue":
        return cls([Fraction(1)], 0, tuple(values), names)

    def _scalar(self, exps) -> Fraction:
        c = Fraction(1)
        for v, e in zip(self.values, exps[1:]):
            if e:
                c *= v**e
        return c

    def _new(self, coeffs, off) -> "PointValue":
        return PointValue(coeffs, off, self.values, self.names)

    def mul_term(self, coef, exps) -> "PointValue":
        if not coef:
            return self._new([], 0)
        c = coef * self._scalar(exps)
        return self._new([c * x for x in self.coeffs], self.off + exps[0])

    def mul_atom(self, exps, copies: int = 1, coef: int = -1) -> "PointValue":
        c = coef * self._scalar(exps)
        delta = exps[0]
        out, off = self.coeffs, self.off
        for _ in range(copies):
            m = len(out)
            new = [Fraction(0)] * (m + abs(delta))
            lo, hi = (0, delta) if delta >= 0 else (-delta, 0)
            for i, x in enumerate(out):
                if x:
                    new[i + lo] += x
                    new[i + hi] += c * x
            out = new
            if delta < 0:
                off += delta
        return self._new(out, off)

    def mul_sparse(self, lp: LaurentPoly) -> "PointValue":
        acc = self._new([], 0)
        for e, c in lp.terms.items():
            acc = acc + self.mul_term(c, e)
        return acc

    def mul_qint(self, x: int) -> "PointValue":
        return self.mul_sparse(bracket_laurent(x, self.names))

    def __add__(self, other: "PointValue") -> "PointValue":
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        off = min(self.off, other.off)
        top = max(self.off + len(self.coeffs), other.off + len(other.coeffs))
        out = [Fraction(0)] * (top - off)
        for src in (self, other):
            base = src.off - off
            for i, x in enumerate(src.coeffs):
                out[base + i] += x
        return self._new(out, off)

    def __neg__(self) -> "PointValue":
        return self._new([-x for x in self.coeffs], self.off)

    def __sub__(self, other: "PointValue") -> "PointValue":
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def degree_span(self) -> int:
        nz = [i for i, x in enumerate(self.coeffs) if x]
        return nz[-1] - nz[0] if nz else -1


def _check_regular(den: FactoredProduct, values) -> None:
    probe = PointValue.one(values, den.names)
    for a in den.atoms:
        if a[0] == 0 and probe._scalar(a) == 1:
            raise SingularSpecialization("singular specialization, resample")


# ---------------------------------------------------------------------------
# the two sides and their comparison


def watson_sides(N: int, values: Sequence[Fraction] | None = None, mutation: str | None = None):
    """Both sides of the terminating transformation as :class:`Assembled` pairs.

    ``values`` (five nonzero rationals for A..E) selects the point-evaluation
    kernel; otherwise the sides are symbolic in (q, A, B, C, D, E).
    """
    if mutation not in (None, "drop-prefactor"):
        raise ValueError(f"unknown Watson mutation {mutation!r}")
    p = WatsonParams.generic(N)
    lhs_t = watson_lhs_terms(p)
    rhs_t = watson_rhs_terms(p, prefactor=mutation != "drop-prefactor")
    if values is None:
        return assemble_terms(lhs_t), assemble_terms(rhs_t)
    values = tuple(Fraction(v) for v in values)
    if len(values) != 5 or not all(values):
        raise ValueError("need five nonzero parameter values")
    for t in lhs_t + rhs_t:
        _check_regular(t.den, values)
    lift = lambda: PointValue.one(values, WATSON_NAMES)  # noqa: E731
    return assemble_terms(lhs_t, lift), assemble_terms(rhs_t, lift)


def sides_agree(lhs: Assembled, rhs: Assembled) -> bool:
    delta, _ = cross_difference(lhs, rhs)
    return delta.is_zero()


def _span(p: FactoredProduct, i: int) -> tuple[int, int]:
    lo = hi = p.unit[i]
    for a, m in p.atoms.items():
        lo += min(a[i], 0) * m
        hi += max(a[i], 0) * m
    return lo, hi


def watson_degree_bound(N: int, mutation: str | None = None) -> int:
    """Upper bound on the total parameter degree of the cross-multiplied
    difference after clearing parameter denominators by a monomial."""
    p = WatsonParams.generic(N)
    sides = (watson_lhs_terms(p), watson_rhs_terms(p, mutation != "drop-prefactor"))
    lcm = sides[0][-1].den.lcm(sides[1][-1].den)
    total = 0
    for i in range(1, 6):
        lo, hi = None, None
        for ts in sides:
            for t in ts:
                if t.is_zero():
                    continue
                co = lcm.divide_exact(t.den) * t.num
                a, b = _span(co, i)
                a, b = a + t.mono[i], b + t.mono[i]
                fe = [e[i] for e in t.factor.terms]
                a, b = a + min(fe), b + max(fe)
                lo = a if lo is None else min(lo, a)
                hi = b if hi is None else max(hi, b)
        total += hi - lo
    return total


@dataclass
class WatsonResult:
    N: int
    mode: str
    holds: bool
    trials: int = 0
    resamples: int = 0
    seed: int | None = None
    degree_bound: int | None = None
    sample_size: int | None = None
    failure_bound: float | None = None
    mutation: str | None = None
    detail: dict = field(default_factory=dict)

    @property
    def claim_id(self) -> str:
        tail = f"/mut={self.mutation}" if self.mutation else ""
        return f"watson/N={self.N}/{self.mode}{tail}"


def watson_check_symbolic(N: int, mutation: str | None = None) -> WatsonResult:
    lhs, rhs = watson_sides(N, mutation=mutation)
    delta, _ = cross_difference(lhs, rhs)
    return WatsonResult(
        N, "symbolic", delta.is_zero(), mutation=mutation, detail={"delta_terms": int(delta.nnz())}
    )


# Sample points are p / Q with Q drawn per coordinate and p uniform in
# [-P, P] \ {0}; conditional on Q these are 2P distinct values, so the
# Schwartz-Zippel bound deg / (2P) applies to each trial.
_P = 1 << 20
_Q = 1000
_RESAMPLE_BUDGET = 50


def _sample(rng: random.Random) -> tuple[Fraction, ...]:
    out = []
    for _ in range(5):
        num = rng.randint(1, _P) * rng.choice((-1, 1))
        out.append(Fraction(num, rng.randint(1, _Q)))
    return tuple(out)


def watson_check_random(N: int, trials: int = 200, seed: int = 0, mutation: str | None = None) -> WatsonResult:
    rng = random.Random(f"watson/{seed}/{N}")
    resamples = 0
    holds = True
    done = 0
    for _ in range(trials):
        for _attempt in range(_RESAMPLE_BUDGET):
            values = _sample(rng)
            try:
                lhs, rhs = watson_sides(N, values, mutation)
                break
            except SingularSpecialization:
                resamples += 1
        else:
            raise SingularSpecialization(f"resample budget exhausted at N={N}")
        done += 1
        if not sides_agree(lhs, rhs):
            holds = False
            break
    deg = watson_degree_bound(N, mutation)
    size = 2 * _P
    return WatsonResult(
        N,
        "random",
        holds,
        trials=done,
        resamples=resamples,
        seed=seed,
        degree_bound=deg,
        sample_size=size,
        failure_bound=(deg / size) ** done if holds else None,
        mutation=mutation,
    )


def with_bracket(t: TermRatio, x: int) -> TermRatio:
    """Replace the q-integer factor of a summand."""
    return replace(t, bracket_index=x, extra=None)
