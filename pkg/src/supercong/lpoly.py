"""Sparse multivariate Laurent polynomials over the integers.

The default ring is Z[q^{+-1}, a^{+-1}, b^{+-1}, c^{+-1}]; exponent vectors are
stored in that variable order and terms iterate in lexicographic order with
q > a > b > c.  Other variable tuples (the Watson check uses six) are allowed
as long as q comes first.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping

from .upoly import UniPoly

__all__ = ["VARS", "LaurentPoly", "bracket_laurent"]

VARS: tuple[str, ...] = ("q", "a", "b", "c")


class LaurentPoly:
    __slots__ = ("terms", "names", "_hash")

    def __init__(self, terms: Mapping[tuple, int] | None = None, names: tuple[str, ...] = VARS):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != len(names):
                        raise ValueError(f"exponent {e} does not match variables {names}")
                    clean[tuple(e)] = c
        self.terms: dict[tuple, int] = clean
        self.names = names
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, names: tuple[str, ...]) -> "LaurentPoly":
        """Wrap an already clean term dictionary."""
        p = cls.__new__(cls)
        p.terms, p.names, p._hash = terms, names, None
        return p

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c: int, names: tuple[str, ...] = VARS) -> "LaurentPoly":
        return cls({(0,) * len(names): c}, names)

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff: int = 1, names: tuple[str, ...] = VARS) -> "LaurentPoly":
        return cls({tuple(exps): coeff}, names)

    @classmethod
    def var(cls, name: str, power: int = 1, names: tuple[str, ...] = VARS) -> "LaurentPoly":
        e = [0] * len(names)
        e[names.index(name)] = power
        return cls({tuple(e): 1}, names)

    @classmethod
    def from_unipoly(cls, p: UniPoly, names: tuple[str, ...] = VARS) -> "LaurentPoly":
        pad = (0,) * (len(names) - 1)
        return cls({(k,) + pad: c for k, c in enumerate(p.coeffs)}, names)

    # basic protocol -----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.names)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.names, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.names != self.names:
                raise ValueError(f"variable mismatch {self.names} vs {other.names}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.names)
        return NotImplemented

    def items(self):
        """Terms in canonical order (descending lexicographic exponent)."""
        return sorted(self.terms.items(), reverse=True)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return LaurentPoly(out, self.names)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        if not small:
            return LaurentPoly({}, self.names)
        # Pack exponent vectors into single ints (Kronecker substitution) so the
        # inner loop adds integers instead of tuples.
        nv = len(self.names)
        lo = [min(e[i] for e in small) + min(e[i] for e in big) for i in range(nv)]
        width = [
            max(e[i] for e in small) + max(e[i] for e in big) - lo[i] + 1 for i in range(nv)
        ]
        lo_s = [min(e[i] for e in small) for i in range(nv)]
        lo_b = [lo[i] - lo_s[i] for i in range(nv)]

        def pack(e, base):
            k = 0
            for i in range(nv):
                k = k * width[i] + (e[i] - base[i])
            return k

        ps = [(pack(e, lo_s), c) for e, c in small.items()]
        pb = [(pack(e, lo_b), c) for e, c in big.items()]
        acc: dict[int, int] = defaultdict(int)
        for k1, c1 in ps:
            for k2, c2 in pb:
                acc[k1 + k2] += c1 * c2
        out = {}
        for k, c in acc.items():
            if not c:
                continue
            e = [0] * nv
            for i in range(nv - 1, -1, -1):
                k, e[i] = divmod(k, width[i])
                e[i] += lo[i]
            out[tuple(e)] = c
        return LaurentPoly._raw(out, self.names)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            if len(self.terms) == 1 and isinstance(k, int):
                ((e, c),) = self.terms.items()
                if abs(c) == 1:
                    return LaurentPoly({tuple(x * k for x in e): c ** (k % 2)}, self.names)
            raise ValueError("only non-negative powers of non-monomials are defined")
        result = LaurentPoly.const(1, self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exps: Iterable[int], coeff: int = 1) -> "LaurentPoly":
        """Multiply by the monomial coeff * x^exps."""
        exps = tuple(exps)
        return LaurentPoly(
            {tuple(x + y for x, y in zip(e, exps)): c * coeff for e, c in self.terms.items()}, self.names
        )

    # exponent queries ---------------------------------------------------
    def _index(self, var: str) -> int:
        return self.names.index(var)

    def min_exp(self, var: str = "q") -> int:
        i = self._index(var)
        return min((e[i] for e in self.terms), default=0)

    def max_exp(self, var: str = "q") -> int:
        i = self._index(var)
        return max((e[i] for e in self.terms), default=0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def clear_q_units(self) -> tuple["LaurentPoly", int]:
        """Return (q^-m * self, m) with m the least q-exponent, so all q-exponents are >= 0."""
        if not self.terms:
            return self, 0
        m = self.min_exp("q")
        if m == 0:
            return self, 0
        return self.shift((-m,) + (0,) * (len(self.names) - 1)), m

    # division by a monic polynomial in q --------------------------------
    def divrem_by_unipoly_in_q(self, m: UniPoly) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Divide by monic m(q), treating the other variables as coefficients."""
        if not m.is_monic():
            raise ValueError("divisor must be monic in q")
        if self.terms and self.min_exp("q") < 0:
            raise ValueError("negative q-exponents present; call clear_q_units first")
        rows: dict[int, dict[tuple, int]] = defaultdict(dict)
        for e, c in self.terms.items():
            rows[e[0]][e[1:]] = c
        dm = m.degree
        quot: dict[tuple, int] = {}
        top = max(rows, default=-1)
        for deg in range(top, dm - 1, -1):
            lead = rows.pop(deg, None)
            if not lead:
                continue
            qd = deg - dm
            for rest, c in lead.items():
                quot[(qd,) + rest] = c
            for j in range(dm):
                mj = m.coeffs[j]
                if mj:
                    row = rows[qd + j]
                    for rest, c in lead.items():
                        row[rest] = row.get(rest, 0) - c * mj
        rem = {(k,) + rest: c for k, row in rows.items() for rest, c in row.items()}
        return LaurentPoly(quot, self.names), LaurentPoly(rem, self.names)

    # substitution / evaluation ------------------------------------------
    def substitute(self, var: str, value) -> "LaurentPoly":
        """Replace ``var`` by ``value`` (a LaurentPoly or int)."""
        value = self._coerce(value)
        i = self._index(var)
        inverse = None
        if any(e[i] < 0 for e in self.terms):
            if not (value.is_monomial() and abs(next(iter(value.terms.values()))) == 1):
                raise ValueError(f"{var} appears with negative exponent; value must be an invertible monomial")
            inverse = value ** -1
        powers: dict[int, LaurentPoly] = {}

        def power(k: int) -> LaurentPoly:
            if k not in powers:
                powers[k] = value**k if k >= 0 else inverse ** (-k)
            return powers[k]

        out = LaurentPoly({}, self.names)
        grouped: dict[int, dict[tuple, int]] = defaultdict(dict)
        for e, c in self.terms.items():
            grouped[e[i]][e[:i] + (0,) + e[i + 1 :]] = c
        for k, part in grouped.items():
            out = out + LaurentPoly(part, self.names) * power(k)
        return out

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at exact values for every variable (Fractions are fine)."""
        total = 0
        for e, c in self.terms.items():
            t = c
            for name, k in zip(self.names, e):
                if k:
                    t *= values[name] ** k
            total += t
        return total

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    # text -----------------------------------------------------------------
    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.items():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(self.names, e) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            else:
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)


def bracket_laurent(x: int, names: tuple[str, ...] = VARS) -> LaurentPoly:
    """The q-integer [x] = (1 - q^x)/(1 - q) for any integer x."""
    pad = (0,) * (len(names) - 1)
    if x >= 0:
        return LaurentPoly({(k,) + pad: 1 for k in range(x)}, names)
    return LaurentPoly({(k,) + pad: -1 for k in range(x, 0)}, names)
