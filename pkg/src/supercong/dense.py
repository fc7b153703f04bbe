"""Dense numpy kernels behind the large Laurent-polynomial computations.

Two representations share the same small interface (``mul_atom``,
``mul_term``, ``mul_sparse``, ``+``, ``-``) so the sum builders can run on
either:

* :class:`DensePoly` -- an exact Laurent polynomial stored as a box of
  coefficients with per-variable offsets.
* :class:`CyclicResidue` -- the image of a Laurent polynomial in
  ``Z[params^{+-1}][q] / ((q^s - 1)^e)``.  Because Phi_s(q)^e divides
  ``(q^s - 1)^e`` the map is exact for every divisibility question about
  Phi_s^e, and q stays a unit, so negative q-powers need no clearing.

Coefficients live in int64 arrays while a tracked L1-norm bound proves they
cannot overflow, and in Python-int object arrays afterwards.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Sequence

import numpy as np

from .lpoly import VARS, LaurentPoly
from .upoly import UniPoly

__all__ = ["DensePoly", "CyclicResidue", "gen_binomial"]

INT64_SAFE = 1 << 62


def _dtype_for(bound: int, *arrays: np.ndarray):
    if bound < INT64_SAFE and all(a.dtype != object for a in arrays):
        return np.int64
    return object


def _cast(arr: np.ndarray, dtype) -> np.ndarray:
    if arr.dtype == dtype:
        return arr
    return arr.astype(dtype)


def _nonzero_count(arr: np.ndarray) -> int:
    if arr.dtype == object:
        return int(np.count_nonzero(arr != 0))
    return int(np.count_nonzero(arr))


def gen_binomial(t: int, j: int) -> int:
    """Binomial coefficient C(t, j) for any integer t (negative t allowed)."""
    if j < 0:
        return 0
    if t >= 0:
        return comb(t, j)
    return (-1) ** j * comb(-t + j - 1, j)


def _box_slices(off: Sequence[int], shape: Sequence[int], lo: Sequence[int]) -> tuple:
    return tuple(slice(o - l, o - l + n) for o, n, l in zip(off, shape, lo))


class DensePoly:
    """Exact Laurent polynomial as a dense coefficient box."""

    __slots__ = ("arr", "off", "bound", "names")

    def __init__(self, arr: np.ndarray, off: Sequence[int], bound: int | None = None, names=VARS):
        self.arr = arr
        self.off = tuple(off)
        self.names = names
        if bound is None:
            bound = int(np.abs(arr.astype(object)).sum()) if arr.size else 0
        self.bound = bound

    # construction / conversion -----------------------------------------
    @classmethod
    def from_sparse(cls, p: LaurentPoly) -> "DensePoly":
        nv = len(p.names)
        if not p.terms:
            return cls(np.zeros((1,) * nv, dtype=np.int64), (0,) * nv, 0, p.names)
        exps = np.array(list(p.terms.keys()), dtype=np.int64)
        lo = exps.min(axis=0)
        hi = exps.max(axis=0)
        bound = sum(abs(c) for c in p.terms.values())
        dtype = np.int64 if bound < INT64_SAFE else object
        arr = np.zeros(tuple(hi - lo + 1), dtype=dtype)
        for e, c in p.terms.items():
            arr[tuple(x - l for x, l in zip(e, lo))] = c
        return cls(arr, tuple(int(x) for x in lo), bound, p.names)

    @classmethod
    def one(cls, names=VARS) -> "DensePoly":
        return cls(np.ones((1,) * len(names), dtype=np.int64), (0,) * len(names), 1, names)

    def to_sparse(self) -> LaurentPoly:
        idx = np.nonzero(self.arr != 0) if self.arr.dtype == object else np.nonzero(self.arr)
        terms = {}
        for pos in zip(*idx):
            terms[tuple(int(i) + o for i, o in zip(pos, self.off))] = int(self.arr[pos])
        return LaurentPoly(terms, self.names)

    def is_zero(self) -> bool:
        return _nonzero_count(self.arr) == 0

    def nnz(self) -> int:
        return _nonzero_count(self.arr)

    def trim(self) -> "DensePoly":
        arr = self.arr
        idx = np.nonzero(arr != 0) if arr.dtype == object else np.nonzero(arr)
        if not idx[0].size:
            return DensePoly(np.zeros((1,) * arr.ndim, dtype=np.int64), (0,) * arr.ndim, 0, self.names)
        lo = [int(i.min()) for i in idx]
        hi = [int(i.max()) + 1 for i in idx]
        sl = tuple(slice(l, h) for l, h in zip(lo, hi))
        return DensePoly(arr[sl], tuple(o + l for o, l in zip(self.off, lo)), self.bound, self.names)

    def q_range(self) -> tuple[int, int]:
        t = self.trim()
        return t.off[0], t.off[0] + t.arr.shape[0] - 1

    # arithmetic -------------------------------------------------------------
    def _combine(self, other: "DensePoly", sign: int) -> "DensePoly":
        lo = [min(a, b) for a, b in zip(self.off, other.off)]
        hi = [
            max(a + n, b + m)
            for a, n, b, m in zip(self.off, self.arr.shape, other.off, other.arr.shape)
        ]
        bound = self.bound + other.bound
        dtype = _dtype_for(bound, self.arr, other.arr)
        out = np.zeros(tuple(h - l for h, l in zip(hi, lo)), dtype=dtype)
        out[_box_slices(self.off, self.arr.shape, lo)] += _cast(self.arr, dtype)
        if sign > 0:
            out[_box_slices(other.off, other.arr.shape, lo)] += _cast(other.arr, dtype)
        else:
            out[_box_slices(other.off, other.arr.shape, lo)] -= _cast(other.arr, dtype)
        return DensePoly(out, lo, bound, self.names)

    def __add__(self, other: "DensePoly") -> "DensePoly":
        return self._combine(other, 1)

    def __sub__(self, other: "DensePoly") -> "DensePoly":
        return self._combine(other, -1)

    def __neg__(self) -> "DensePoly":
        return DensePoly(-self.arr, self.off, self.bound, self.names)

    def mul_term(self, coef: int, exps: Sequence[int]) -> "DensePoly":
        bound = self.bound * abs(coef)
        dtype = _dtype_for(bound, self.arr)
        arr = _cast(self.arr, dtype) * coef if coef != 1 else self.arr
        return DensePoly(arr, tuple(o + e for o, e in zip(self.off, exps)), bound, self.names)

    def mul_atom(self, exps: Sequence[int], copies: int = 1, coef: int = -1) -> "DensePoly":
        """Multiply by (1 + coef * x^exps)^copies; the default is an atom 1 - x^exps."""
        out = self
        for _ in range(copies):
            out = out._mul_binomial(exps, coef)
        return out

    def _mul_binomial(self, exps: Sequence[int], coef: int) -> "DensePoly":
        shape = self.arr.shape
        lo = [o + min(e, 0) for o, e in zip(self.off, exps)]
        size = tuple(n + abs(e) for n, e in zip(shape, exps))
        bound = self.bound * (1 + abs(coef))
        dtype = _dtype_for(bound, self.arr)
        src = _cast(self.arr, dtype)
        out = np.zeros(size, dtype=dtype)
        out[_box_slices(self.off, shape, lo)] += src
        shifted = tuple(o + e for o, e in zip(self.off, exps))
        if coef == -1:
            out[_box_slices(shifted, shape, lo)] -= src
        else:
            out[_box_slices(shifted, shape, lo)] += coef * src
        return DensePoly(out, lo, bound, self.names)

    def mul_sparse(self, p: LaurentPoly) -> "DensePoly":
        if not p.terms:
            return DensePoly.from_sparse(LaurentPoly({}, self.names))
        terms = list(p.terms.items())
        nv = self.arr.ndim
        mins = [min(e[i] for e, _ in terms) for i in range(nv)]
        maxs = [max(e[i] for e, _ in terms) for i in range(nv)]
        lo = [o + m for o, m in zip(self.off, mins)]
        size = tuple(n + mx - mn for n, mx, mn in zip(self.arr.shape, maxs, mins))
        bound = self.bound * sum(abs(c) for _, c in terms)
        dtype = _dtype_for(bound, self.arr)
        src = _cast(self.arr, dtype)
        out = np.zeros(size, dtype=dtype)
        for e, c in terms:
            sl = _box_slices(tuple(o + x for o, x in zip(self.off, e)), self.arr.shape, lo)
            if c == 1:
                out[sl] += src
            elif c == -1:
                out[sl] -= src
            else:
                out[sl] += c * src
        return DensePoly(out, lo, bound, self.names)

    def __mul__(self, other: "DensePoly") -> "DensePoly":
        if other.nnz() <= self.nnz():
            return self.mul_sparse(other.to_sparse())
        return other.mul_sparse(self.to_sparse())

    def mul_qint(self, x: int) -> "DensePoly":
        """Multiply by the q-integer [x] using a sliding-window sum along q."""
        if x == 0:
            return self.mul_term(0, (0,) * self.arr.ndim)
        width = abs(x)
        bound = self.bound * width
        dtype = _dtype_for(bound, self.arr)
        src = _cast(self.arr, dtype)
        nq = src.shape[0]
        csum = np.cumsum(src, axis=0, dtype=dtype)
        ext = np.empty((nq + width - 1,) + src.shape[1:], dtype=dtype)
        ext[:nq] = csum
        ext[nq:] = csum[-1]
        out = ext.copy()
        out[width:] -= ext[: nq - 1]
        off = list(self.off)
        if x > 0:
            return DensePoly(out, off, bound, self.names)
        # [x] = -q^x [-x] for x < 0
        off[0] += x
        return DensePoly(-out, off, bound, self.names)

    def substitute_q_power(self, var: str, qexp: int) -> "DensePoly":
        """Replace parameter ``var`` by q^qexp, eliminating that axis."""
        i = self.names.index(var)
        if i == 0:
            raise ValueError("cannot substitute q by a power of q")
        arr = self.arr
        nq = arr.shape[0]
        n = arr.shape[i]
        e_lo = self.off[i]
        shifts = [(e_lo + j) * qexp for j in range(n)]
        smin, smax = min(shifts), max(shifts)
        new_shape = list(arr.shape)
        new_shape[0] = nq + smax - smin
        new_shape[i] = 1
        out = np.zeros(tuple(new_shape), dtype=arr.dtype)
        for j, sh in enumerate(shifts):
            src = np.take(arr, [j], axis=i)
            start = sh - smin
            dst = [slice(None)] * arr.ndim
            dst[0] = slice(start, start + nq)
            out[tuple(dst)] += src
        off = list(self.off)
        off[0] += smin
        off[i] = 0
        return DensePoly(out, off, self.bound, self.names)

    def clear_q_units(self) -> tuple["DensePoly", int]:
        t = self.trim()
        m = t.off[0]
        return DensePoly(t.arr, (0,) + t.off[1:], t.bound, self.names), m

    def divrem_q(self, m: UniPoly) -> tuple["DensePoly", "DensePoly"]:
        """Divide by monic m(q); requires no negative q-exponents."""
        if not m.is_monic():
            raise ValueError("divisor must be monic in q")
        if self.off[0] < 0:
            raise ValueError("negative q-exponents present; clear q units first")
        dm = m.degree
        arr = self.arr.astype(object)
        top = self.off[0] + arr.shape[0]
        rem = np.zeros((max(top, dm),) + arr.shape[1:], dtype=object)
        rem[self.off[0] : top] = arr
        nq = max(top - dm, 1)
        quot = np.zeros((nq,) + arr.shape[1:], dtype=object)
        coeffs = [(j, c) for j, c in enumerate(m.coeffs[:-1]) if c]
        for i in range(top - 1, dm - 1, -1):
            lead = rem[i]
            if _nonzero_count(lead) == 0:
                continue
            quot[i - dm] = lead
            for j, c in coeffs:
                rem[i - dm + j] -= c * lead
        off = (0,) + self.off[1:]
        return DensePoly(quot, off, None, self.names), DensePoly(rem[:dm], off, None, self.names)

    def __repr__(self) -> str:
        return f"DensePoly(shape={self.arr.shape}, off={self.off}, dtype={self.arr.dtype})"


class CyclicResidue:
    """Element of Z[params^{+-1}][q]/((q^s-1)^e), stored in the basis eps^i q^j.

    Here eps = q^s - 1, so eps^e = 0, and the array has shape (e, s, *params).
    """

    __slots__ = ("arr", "poff", "s", "e", "bound", "names")

    def __init__(self, arr, poff, s, e, bound=None, names=VARS):
        self.arr = arr
        self.poff = tuple(poff)
        self.s = s
        self.e = e
        self.names = names
        if bound is None:
            bound = int(np.abs(arr.astype(object)).sum()) if arr.size else 0
        self.bound = bound

    # construction -------------------------------------------------------
    @classmethod
    def from_sparse(cls, p: LaurentPoly, s: int, e: int) -> "CyclicResidue":
        nparams = len(p.names) - 1
        if not p.terms:
            arr = np.zeros((e, s) + (1,) * nparams, dtype=np.int64)
            return cls(arr, (0,) * nparams, s, e, 0, p.names)
        out = None
        for exps, c in p.terms.items():
            term = cls._unit(s, e, nparams, p.names).mul_term(c, exps)
            out = term if out is None else out + term
        return out

    @classmethod
    def _unit(cls, s, e, nparams, names) -> "CyclicResidue":
        arr = np.zeros((e, s) + (1,) * nparams, dtype=np.int64)
        arr[(0, 0) + (0,) * nparams] = 1
        return cls(arr, (0,) * nparams, s, e, 1, names)

    @classmethod
    def one(cls, s: int, e: int, names=VARS) -> "CyclicResidue":
        return cls._unit(s, e, len(names) - 1, names)

    # q-shift in the quotient ring ---------------------------------------
    def _qshift_factor(self, delta: int) -> int:
        t, rho = divmod(delta, self.s)
        wrap = 2 if (rho and self.e > 1) else 1
        return wrap * sum(abs(gen_binomial(t, j)) for j in range(self.e))

    def _qshift(self, arr: np.ndarray, delta: int) -> np.ndarray:
        s, e = self.s, self.e
        t, rho = divmod(delta, s)
        if rho:
            y = np.roll(arr, rho, axis=1)
            if e > 1:
                y[1:, :rho] += y[:-1, :rho].copy()
        else:
            y = arr.copy()
        if t and e > 1:
            z = y.copy()
            for i in range(1, e):
                for j in range(1, i + 1):
                    b = gen_binomial(t, j)
                    if b:
                        z[i] += b * y[i - j]
            y = z
        return y

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "CyclicResidue") -> None:
        if (self.s, self.e) != (other.s, other.e):
            raise ValueError("residues live in different quotient rings")

    def _combine(self, other: "CyclicResidue", sign: int) -> "CyclicResidue":
        self._check(other)
        ps, po = self.arr.shape[2:], other.arr.shape[2:]
        lo = [min(a, b) for a, b in zip(self.poff, other.poff)]
        hi = [max(a + n, b + m) for a, n, b, m in zip(self.poff, ps, other.poff, po)]
        bound = self.bound + other.bound
        dtype = _dtype_for(bound, self.arr, other.arr)
        out = np.zeros((self.e, self.s) + tuple(h - l for h, l in zip(hi, lo)), dtype=dtype)
        full = (slice(None), slice(None))
        out[full + _box_slices(self.poff, ps, lo)] += _cast(self.arr, dtype)
        if sign > 0:
            out[full + _box_slices(other.poff, po, lo)] += _cast(other.arr, dtype)
        else:
            out[full + _box_slices(other.poff, po, lo)] -= _cast(other.arr, dtype)
        return CyclicResidue(out, lo, self.s, self.e, bound, self.names)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return CyclicResidue(-self.arr, self.poff, self.s, self.e, self.bound, self.names)

    def mul_term(self, coef: int, exps: Sequence[int]) -> "CyclicResidue":
        bound = self.bound * abs(coef) * self._qshift_factor(exps[0])
        dtype = _dtype_for(bound, self.arr)
        arr = self._qshift(_cast(self.arr, dtype), exps[0])
        if coef != 1:
            arr = arr * coef
        poff = tuple(o + x for o, x in zip(self.poff, exps[1:]))
        return CyclicResidue(arr, poff, self.s, self.e, bound, self.names)

    def mul_atom(self, exps: Sequence[int], copies: int = 1, coef: int = -1) -> "CyclicResidue":
        out = self
        for _ in range(copies):
            out = out._mul_binomial(exps, coef)
        return out

    def _mul_binomial(self, exps: Sequence[int], coef: int) -> "CyclicResidue":
        pe = exps[1:]
        ps = self.arr.shape[2:]
        bound = self.bound * (1 + abs(coef) * self._qshift_factor(exps[0]))
        dtype = _dtype_for(bound, self.arr)
        src = _cast(self.arr, dtype)
        lo = [o + min(x, 0) for o, x in zip(self.poff, pe)]
        size = tuple(n + abs(x) for n, x in zip(ps, pe))
        out = np.zeros((self.e, self.s) + size, dtype=dtype)
        full = (slice(None), slice(None))
        out[full + _box_slices(self.poff, ps, lo)] += src
        moved = self._qshift(src, exps[0])
        sl = full + _box_slices(tuple(o + x for o, x in zip(self.poff, pe)), ps, lo)
        if coef == -1:
            out[sl] -= moved
        else:
            out[sl] += coef * moved
        return CyclicResidue(out, lo, self.s, self.e, bound, self.names)

    def mul_sparse(self, p: LaurentPoly) -> "CyclicResidue":
        out = None
        for exps, c in p.terms.items():
            term = self.mul_term(c, exps)
            out = term if out is None else out + term
        if out is None:
            return CyclicResidue.from_sparse(LaurentPoly({}, self.names), self.s, self.e)
        return out

    def mul_qint(self, x: int) -> "CyclicResidue":
        """Multiply by the q-integer [x]."""
        one = CyclicResidue.one(self.s, self.e, self.names)
        key = (0,) * len(self.names)
        basis = one.mul_sparse(_qint_sparse(x, self.names)) if x else one.mul_term(0, key)
        return self.mul_q_only(basis)

    def mul_q_only(self, other: "CyclicResidue") -> "CyclicResidue":
        """Multiply by a parameter-free residue (one whose parameter box is a single point)."""
        if any(n != 1 for n in other.arr.shape[2:]):
            raise ValueError("mul_q_only expects a parameter-free residue")
        s, e = self.s, self.e
        coeffs = other.arr.reshape(e, s)
        entries = [(i, j, int(coeffs[i, j])) for i in range(e) for j in range(s) if coeffs[i, j] != 0]
        bound = self.bound * sum(abs(c) * (2 if (j and e > 1) else 1) for _, j, c in entries)
        dtype = _dtype_for(bound, self.arr)
        src = _cast(self.arr, dtype)
        out = np.zeros(src.shape, dtype=dtype)
        for i, j, c in entries:
            moved = self._qshift(src, j)
            if i:
                moved = np.concatenate([np.zeros_like(moved[:i]), moved[: e - i]], axis=0)
            out += c * moved if c != 1 else moved
        poff = tuple(o + p for o, p in zip(self.poff, other.poff))
        return CyclicResidue(out, poff, s, e, bound, self.names)

    def shift_param_axis(self, var: str, delta: int) -> "CyclicResidue":
        exps = [0] * len(self.names)
        exps[self.names.index(var)] = delta
        return self.mul_term(1, exps)

    # readout ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return _nonzero_count(self.arr) == 0

    def nnz(self) -> int:
        return _nonzero_count(self.arr)

    def to_power_basis(self) -> DensePoly:
        """Lift to the unique representative of q-degree < s*e, as a DensePoly."""
        s, e = self.s, self.e
        src = self.arr.astype(object)
        out = np.zeros((s * e,) + src.shape[2:], dtype=object)
        for i in range(e):
            for j in range(i + 1):
                c = comb(i, j) * (-1) ** (i - j)
                out[s * j : s * j + s] += c * src[i]
        return DensePoly(out, (0,) + self.poff, None, self.names)

    def residue_mod(self, m: UniPoly) -> DensePoly:
        """Remainder modulo m, valid when m divides (q^s - 1)^e."""
        return self.to_power_basis().divrem_q(m)[1]

    def __repr__(self) -> str:
        return f"CyclicResidue(s={self.s}, e={self.e}, shape={self.arr.shape}, dtype={self.arr.dtype})"


def _qint_sparse(x: int, names) -> LaurentPoly:
    from .lpoly import bracket_laurent

    return bracket_laurent(x, names)


def lift_factory(kind: str, s: int | None = None, e: int | None = None):
    """Return a function LaurentPoly -> ring element for the requested kernel."""
    if kind == "full":
        return DensePoly.from_sparse
    if kind == "cyclic":
        return lambda p: CyclicResidue.from_sparse(p, s, e)
    raise ValueError(f"unknown kernel {kind!r}")


def product_of_atoms(lift_one, atoms: Iterable[tuple[tuple[int, ...], int]]):
    out = lift_one
    for exps, mult in atoms:
        out = out.mul_atom(exps, mult)
    return out
