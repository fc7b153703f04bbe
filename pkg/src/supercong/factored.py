"""Products of q-Pochhammer symbols kept in factored form.

A :class:`FactoredProduct` is ``sign * monomial * prod (1 - x_i)^{m_i}`` where
each atom ``1 - x_i`` is stored by the exponent vector of the monomial
``x_i`` (ring order: q first, then the parameters).  Atoms are canonical: the
first nonzero parameter exponent is positive, or, for a parameter-free atom,
the q-exponent is positive.  ``1 - x^{-1} = -x^{-1} (1 - x)`` moves the unit
into the product's sign and monomial.

Coprimality with Phi_n(q) is certified structurally.  Phi_n is irreducible
over Q and free of the parameters, so it divides ``1 - q^delta`` exactly when
``n | delta`` (and then exactly once), and never divides an atom in which some
parameter occurs: such an atom is primitive of positive degree in that
parameter.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping

from .dense import DensePoly
from .lpoly import VARS, LaurentPoly

__all__ = [
    "FactoredProduct",
    "NotFactorwiseDivisible",
    "canonical_atom",
    "pochhammer",
    "divide_exact",
    "expand",
    "coprime_to_cyclotomic",
]


class NotFactorwiseDivisible(ArithmeticError):
    pass


def canonical_atom(exps: tuple[int, ...]) -> tuple[int, tuple[int, ...] | None, tuple[int, ...]]:
    """Normalise ``1 - x^exps``.

    Returns ``(sign, atom, unit)`` with ``1 - x^exps = sign * x^unit * (1 - x^atom)``;
    ``atom`` is None when the factor is the zero polynomial ``1 - 1``.
    """
    zero = (0,) * len(exps)
    if not any(exps):
        return 0, None, zero
    order = exps[1:] + exps[:1]
    lead = next(x for x in order if x)
    if lead > 0:
        return 1, tuple(exps), zero
    return -1, tuple(-x for x in exps), tuple(exps)


class FactoredProduct:
    __slots__ = ("sign", "unit", "atoms", "names")

    def __init__(self, sign: int, unit: tuple[int, ...], atoms: Mapping[tuple, int] | None = None, names=VARS):
        self.sign = sign
        self.names = names
        self.unit = tuple(unit) if sign else (0,) * len(names)
        if sign == 0:
            atoms = {}
        clean = {}
        for a, m in (atoms or {}).items():
            if m < 0:
                raise ValueError("atom multiplicities must be positive")
            if m:
                clean[tuple(a)] = m
        self.atoms: dict[tuple, int] = clean

    # constructors -----------------------------------------------------------
    @classmethod
    def one(cls, names=VARS) -> "FactoredProduct":
        return cls(1, (0,) * len(names), {}, names)

    @classmethod
    def zero(cls, names=VARS) -> "FactoredProduct":
        return cls(0, (0,) * len(names), {}, names)

    @classmethod
    def monomial(cls, exps: Iterable[int], sign: int = 1, names=VARS) -> "FactoredProduct":
        return cls(sign, tuple(exps), {}, names)

    @classmethod
    def from_factor(cls, exps: Iterable[int], names=VARS) -> "FactoredProduct":
        """The product consisting of the single factor ``1 - x^exps``."""
        sign, atom, unit = canonical_atom(tuple(exps))
        if atom is None:
            return cls.zero(names)
        return cls(sign, unit, {atom: 1}, names)

    # queries ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.sign == 0

    def num_atoms(self) -> int:
        return sum(self.atoms.values())

    def sorted_atoms(self) -> list[tuple[tuple, int]]:
        return sorted(self.atoms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactoredProduct):
            return NotImplemented
        return (self.sign, self.unit, self.atoms, self.names) == (other.sign, other.unit, other.atoms, other.names)

    def __hash__(self) -> int:
        return hash((self.sign, self.unit, frozenset(self.atoms.items())))

    def __repr__(self) -> str:
        if self.sign == 0:
            return "FactoredProduct(0)"
        parts = [("-" if self.sign < 0 else "") + _mono_str(self.unit, self.names)]
        for a, m in self.sorted_atoms():
            parts.append(f"(1 - {_mono_str(a, self.names)})" + (f"^{m}" if m > 1 else ""))
        return "FactoredProduct(" + " * ".join(parts) + ")"

    # algebra --------------------------------------------------------------------
    def __mul__(self, other: "FactoredProduct") -> "FactoredProduct":
        if self.sign == 0 or other.sign == 0:
            return FactoredProduct.zero(self.names)
        atoms = Counter(self.atoms)
        atoms.update(other.atoms)
        unit = tuple(x + y for x, y in zip(self.unit, other.unit))
        return FactoredProduct(self.sign * other.sign, unit, atoms, self.names)

    def __pow__(self, k: int) -> "FactoredProduct":
        if k < 0:
            raise ValueError("negative power")
        if self.sign == 0:
            return self if k else FactoredProduct.one(self.names)
        return FactoredProduct(
            self.sign**k, tuple(x * k for x in self.unit), {a: m * k for a, m in self.atoms.items()}, self.names
        )

    def times_monomial(self, exps: Iterable[int], sign: int = 1) -> "FactoredProduct":
        return self * FactoredProduct.monomial(exps, sign, self.names)

    def divide_exact(self, den: "FactoredProduct") -> "FactoredProduct":
        if den.sign == 0:
            raise ZeroDivisionError("division by a zero product")
        if self.sign == 0:
            return self
        atoms = dict(self.atoms)
        for a, m in den.atoms.items():
            have = atoms.get(a, 0)
            if have < m:
                raise NotFactorwiseDivisible(f"atom {a} (x{m}) not present in numerator (x{have})")
            atoms[a] = have - m
        unit = tuple(x - y for x, y in zip(self.unit, den.unit))
        return FactoredProduct(self.sign * den.sign, unit, atoms, self.names)

    def lcm(self, other: "FactoredProduct") -> "FactoredProduct":
        """Atomwise lcm (sign and unit of ``self``)."""
        atoms = dict(self.atoms)
        for a, m in other.atoms.items():
            atoms[a] = max(atoms.get(a, 0), m)
        return FactoredProduct(self.sign, self.unit, atoms, self.names)

    def substitute_q_power(self, var: str, qexp: int) -> "FactoredProduct":
        """Substitute the parameter ``var`` by q^qexp, re-canonicalising atoms."""
        i = self.names.index(var)
        if self.sign == 0:
            return self

        def sub(e):
            e = list(e)
            e[0] += e[i] * qexp
            e[i] = 0
            return tuple(e)

        out = FactoredProduct.monomial(sub(self.unit), self.sign, self.names)
        for a, m in self.atoms.items():
            out = out * FactoredProduct.from_factor(sub(a), self.names) ** m
        return out

    # coprimality ----------------------------------------------------------------
    def cyclotomic_valuation(self, n: int) -> int:
        """Exact multiplicity of Phi_n(q) in the product (zero product excluded)."""
        if self.sign == 0:
            raise ValueError("valuation of the zero product")
        return sum(m for a, m in self.atoms.items() if not any(a[1:]) and a[0] % n == 0)

    def coprime_to_cyclotomic(self, n: int) -> bool:
        return self.cyclotomic_valuation(n) == 0

    def offending_atoms(self, n: int) -> list[tuple[tuple, int]]:
        return [(a, m) for a, m in self.sorted_atoms() if not any(a[1:]) and a[0] % n == 0]

    # expansion --------------------------------------------------------------------
    def expand(self) -> LaurentPoly:
        return self.expand_dense().to_sparse()

    def expand_dense(self) -> DensePoly:
        return self.apply_to(DensePoly.one(self.names))

    def apply_to(self, elem):
        """Multiply a kernel element (DensePoly or CyclicResidue) by this product."""
        if self.sign == 0:
            return elem.mul_term(0, (0,) * len(self.names))
        out = elem.mul_term(self.sign, self.unit)
        for a, m in self.sorted_atoms():
            out = out.mul_atom(a, m)
        return out

    def expand_sparse(self) -> LaurentPoly:
        """Expansion with the sparse dictionary arithmetic only."""
        if self.sign == 0:
            return LaurentPoly({}, self.names)
        # Every partial product has exponents inside the final box, so the
        # vectors can be packed into mixed-radix integers once up front.
        nv = len(self.names)
        atoms = self.sorted_atoms()
        lo = [self.unit[i] + sum(m * min(a[i], 0) for a, m in atoms) for i in range(nv)]
        hi = [self.unit[i] + sum(m * max(a[i], 0) for a, m in atoms) for i in range(nv)]
        stride = [1] * nv
        for i in range(nv - 2, -1, -1):
            stride[i] = stride[i + 1] * (hi[i + 1] - lo[i + 1] + 1)

        def pack(e):
            return sum(x * s for x, s in zip(e, stride))

        cur = {pack(u - l for u, l in zip(self.unit, lo)): self.sign}
        for a, m in atoms:
            shift = pack(a)
            for _ in range(m):
                nxt = dict(cur)
                for k, c in cur.items():
                    v = nxt.get(k + shift, 0) - c
                    if v:
                        nxt[k + shift] = v
                    else:
                        nxt.pop(k + shift, None)
                cur = nxt
        out = {}
        for k, c in cur.items():
            e = []
            for i in range(nv):
                x, k = divmod(k, stride[i])
                e.append(x + lo[i])
            out[tuple(e)] = c
        return LaurentPoly(out, self.names)

    def q_extent(self) -> tuple[int, int]:
        """Least and greatest q-exponent that can occur in the expansion."""
        lo = hi = self.unit[0]
        for a, m in self.atoms.items():
            lo += min(a[0], 0) * m
            hi += max(a[0], 0) * m
        return lo, hi


def cancel(num: FactoredProduct, den: FactoredProduct) -> tuple[FactoredProduct, FactoredProduct]:
    """Remove common atoms; returns the reduced (num, den), units moved to num."""
    if den.sign == 0:
        raise ZeroDivisionError("zero denominator")
    if num.sign == 0:
        return num, FactoredProduct.one(num.names)
    na, da = dict(num.atoms), dict(den.atoms)
    for a in list(da):
        k = min(na.get(a, 0), da[a])
        if k:
            na[a] -= k
            da[a] -= k
    unit = tuple(x - y for x, y in zip(num.unit, den.unit))
    names = num.names
    return (
        FactoredProduct(num.sign * den.sign, unit, na, names),
        FactoredProduct(1, (0,) * len(names), da, names),
    )


def pochhammer(base: Iterable[int], d: int, k: int, names=VARS) -> FactoredProduct:
    """(x; q^d)_k = prod_{j<k} (1 - x q^{dj}) for the monomial x = x^base."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if d < 1:
        raise ValueError("step must be a positive power of q")
    base = tuple(base)
    out = FactoredProduct.one(names)
    for j in range(k):
        e = (base[0] + d * j,) + base[1:]
        out = out * FactoredProduct.from_factor(e, names)
        if out.sign == 0:
            break
    return out


def divide_exact(num: FactoredProduct, den: FactoredProduct) -> FactoredProduct:
    return num.divide_exact(den)


def expand(p: FactoredProduct) -> LaurentPoly:
    return p.expand()


def coprime_to_cyclotomic(p: FactoredProduct, n: int) -> bool:
    return p.coprime_to_cyclotomic(n)


def _mono_str(e: tuple[int, ...], names) -> str:
    parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
    return "*".join(parts) or "1"
