"""Dense univariate polynomials in q, cyclotomic polynomials and q-integers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "UniPoly",
    "ModulusSpec",
    "cyclotomic",
    "q_integer",
    "modulus_expand",
    "modulus_for_theorem",
    "divisors",
    "euler_phi",
]


def divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


class UniPoly:
    """Polynomial c[0] + c[1] q + ... with exact (int or Fraction) coefficients.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple = tuple(c)

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "UniPoly":
        return cls([0] * k + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lead == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self or not other:
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = UniPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, divisor: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Long division; the divisor must be monic unless coefficients are Fractions."""
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = divisor.lead
        if lead != 1 and not any(isinstance(c, Fraction) for c in self.coeffs + divisor.coeffs):
            raise ValueError("divisor must be monic for exact integer division")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return UniPoly(), UniPoly(rem)
        quot = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            if lead != 1:
                c = Fraction(c) / lead
            quot[i - dd] = c
            for j in range(dd + 1):
                rem[i - dd + j] -= c * divisor.coeffs[j]
        return UniPoly(quot), UniPoly(rem[:dd])

    def __floordiv__(self, divisor):
        return self.divmod(divisor)[0]

    def __mod__(self, divisor):
        return self.divmod(divisor)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, int(c))
        return g

    def monic(self) -> "UniPoly":
        lead = Fraction(self.lead)
        return UniPoly(Fraction(c) / lead for c in self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if k == 0:
                body = str(mag)
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over the rationals."""
    f = UniPoly(Fraction(c) for c in f.coeffs)
    g = UniPoly(Fraction(c) for c in g.coeffs)
    while g:
        f, g = g, f.divmod(g)[1]
    return f.monic() if f else f


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> UniPoly:
    """Phi_n(q), obtained by dividing q^n - 1 by Phi_d(q) for every proper divisor d."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclotomic index must be a positive integer, got {n!r}")
    poly = UniPoly.monomial(n) - 1
    for d in divisors(n)[:-1]:
        poly, rem = poly.divmod(cyclotomic(d))
        assert not rem
    return poly


def q_integer(n: int) -> UniPoly:
    """[n] = 1 + q + ... + q^(n-1)."""
    if n < 1:
        raise ValueError("q_integer needs n >= 1; use lpoly.bracket_laurent otherwise")
    return UniPoly([1] * n)


@dataclass(frozen=True)
class ModulusSpec:
    """Symbolic product of cyclotomic powers, prod Phi_s(q)^e_s."""

    factors: tuple[tuple[int, int], ...]
    label: str = ""

    def __post_init__(self):
        seen = set()
        for s, e in self.factors:
            if s < 1 or e < 1:
                raise ValueError(f"bad cyclotomic factor ({s}, {e})")
            if s in seen:
                raise ValueError(f"cyclotomic index {s} repeated")
            seen.add(s)
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))
        if not self.label:
            object.__setattr__(self, "label", self.describe())

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], label: str = "") -> "ModulusSpec":
        merged: dict[int, int] = {}
        for s, e in pairs:
            merged[s] = merged.get(s, 0) + e
        return cls(tuple(merged.items()), label)

    @classmethod
    def q_bracket(cls, n: int) -> "ModulusSpec":
        return cls(tuple((s, 1) for s in divisors(n) if s > 1), "[n]")

    @classmethod
    def bracket_times_phi(cls, n: int) -> "ModulusSpec":
        pairs = [(s, 2 if s == n else 1) for s in divisors(n) if s > 1]
        return cls(tuple(pairs), "[n]Phi_n")

    @classmethod
    def phi_power(cls, n: int, e: int) -> "ModulusSpec":
        return cls(((n, e),), "Phi_n" if e == 1 else f"Phi_n^{e}")

    def describe(self) -> str:
        return "*".join(f"Phi_{s}" if e == 1 else f"Phi_{s}^{e}" for s, e in self.factors) or "1"

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def degree(self) -> int:
        return sum(e * euler_phi(s) for s, e in self.factors)

    def weakened(self, s: int) -> "ModulusSpec":
        """The same modulus with one power of Phi_s removed."""
        pairs = [(t, e - (t == s)) for t, e in self.factors]
        return ModulusSpec(tuple((t, e) for t, e in pairs if e > 0))


def modulus_expand(m: ModulusSpec) -> UniPoly:
    out = UniPoly([1])
    for s, e in m.factors:
        out = out * cyclotomic(s) ** e
    return out


THEOREMS = ("thm1.1", "thm1.2")


def modulus_for_theorem(n: int, d: int, case: str) -> ModulusSpec:
    """Modulus asserted by the theorem ``case`` ('thm1.1' or 'thm1.2') for (n, d)."""
    if case not in THEOREMS:
        raise ValueError(f"unknown theorem {case!r}")
    if gcd(n, d) != 1:
        raise ValueError(f"gcd({n}, {d}) != 1")
    if d < 3 or n < 1 or (case == "thm1.2" and n < 2):
        raise ValueError(f"(n, d) = ({n}, {d}) outside the theorem's range")
    strong_residue = -1 if case == "thm1.1" else 1
    if n > 1 and (n - strong_residue) % d == 0:
        return ModulusSpec.bracket_times_phi(n)
    return ModulusSpec.q_bracket(n)


def is_strong_case(n: int, d: int, case: str) -> bool:
    return modulus_for_theorem(n, d, case).label == "[n]Phi_n"


def as_unipoly(coeffs: Sequence) -> UniPoly:
    return coeffs if isinstance(coeffs, UniPoly) else UniPoly(coeffs)
