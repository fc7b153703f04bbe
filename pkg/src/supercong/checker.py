"""Congruence verdicts for assembled sums.

A sum N / (u * D) is 0 modulo Phi_s^e when Phi_s^e divides the reduced
numerator and the reduced denominator is prime to Phi_s.  Denominators of the
theorem sums contain (q^d; q^d)_k, which for composite n picks up Phi_s with
s | n, s < n.  The multiplicity v of Phi_s in D is read off the atoms exactly,
so the test becomes Phi_s^{e+v} | N.  With ``strict=True`` any such shared
factor is instead an error, as is expected of the theorem-level moduli Phi_n.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .dense import CyclicResidue, DensePoly
from .factored import FactoredProduct, pochhammer
from .lpoly import LaurentPoly
from .qhyper.families import (
    Assembled,
    Family,
    SumSpec,
    assemble,
    assemble_residue,
    assemble_terms,
    cross_difference,
    lemma_m,
    proof_identity_2_6,
    term,
    terms,
    theorem_L,
    theorem_spec,
)
from .upoly import ModulusSpec, UniPoly, cyclotomic, is_strong_case, modulus_for_theorem

__all__ = [
    "CertificateError",
    "CongruenceClaim",
    "Verdict",
    "check",
    "check_mixed",
    "check_lemma_2_1",
    "check_identity_2_6",
    "lemma_2_2_vanishing",
    "oracle_check",
    "oracle_mixed",
    "oracle_lemma_2_1",
    "oracle_identity_2_6",
    "build_claims",
    "run_claim",
    "run_grid",
    "GRID_FAMILIES",
    "MIXED",
]

MIXED = "MIXED"

GRID_FAMILIES = ("thm1.1", "thm1.2", "eq1.5", "lemma2.1", "lemma2.2", "thm2.3", "proof2.6", "proof2.7")


class CertificateError(ArithmeticError):
    """The denominator shares a factor with the modulus; the method does not apply."""


@dataclass(frozen=True)
class CongruenceClaim:
    """``spec`` vanishes modulo ``modulus`` (times ``c - q^E`` when ``mixed``)."""

    spec: SumSpec
    modulus: ModulusSpec
    mixed: tuple[str, int] | None = None

    def __post_init__(self):
        if not self.modulus.factors and self.mixed is None:
            raise ValueError("empty modulus")

    @property
    def id(self) -> str:
        tail = f"/mixed={self.mixed[0]}-q^{self.mixed[1]}" if self.mixed else ""
        return f"{self.spec.key()}/mod={self.modulus.describe()}{tail}"


@dataclass
class Verdict:
    id: str
    family: str
    n: int
    d: int | None
    r: int | None
    m_upper: int | None
    modulus: str
    holds: bool
    failing_factor: object = None  # (s, e), MIXED, or None
    certificate: list = field(default_factory=list)
    multiplicities: dict = field(default_factory=dict)
    num_terms: int = 0
    max_q_degree: int = 0
    numerator_size: int = 0
    ms: float = 0.0
    extra: dict = field(default_factory=dict)

    def as_dict(self, stable: bool = False) -> dict:
        ff = self.failing_factor
        if isinstance(ff, tuple):
            ff = list(ff)
        out = {
            "id": self.id,
            "family": self.family,
            "n": self.n,
            "d": self.d,
            "r": self.r,
            "m_upper": self.m_upper,
            "modulus": self.modulus,
            "holds": self.holds,
            "failing_factor": ff,
            "num_terms": self.num_terms,
            "max_q_degree": self.max_q_degree,
            "ms": 0 if stable else round(self.ms, 3),
            "certificate": self.certificate,
            "numerator_size": self.numerator_size,
        }
        if self.multiplicities:
            out["multiplicities"] = {str(k): v for k, v in sorted(self.multiplicities.items())}
        if self.extra:
            out["extra"] = self.extra
        return out


# ---------------------------------------------------------------------------
# helpers


def _certificate(D: FactoredProduct, s: int, strict: bool) -> tuple[int, dict]:
    v = D.cyclotomic_valuation(s)
    entry = {
        "s": s,
        "den_valuation": v,
        "offending_atoms": [[list(a), m] for a, m in D.offending_atoms(s)],
    }
    if v and strict:
        raise CertificateError(f"denominator contains Phi_{s}^{v}: {entry['offending_atoms']}")
    return v, entry


def phi_multiplicity(N: DensePoly, s: int, cap: int) -> int:
    """min(cap, multiplicity of Phi_s in N) by successive exact division."""
    phi = cyclotomic(s)
    cur = N
    for count in range(cap):
        if cur.is_zero():
            return cap
        quot, rem = cur.divrem_q(phi)
        if not rem.is_zero():
            return count
        cur = quot
    return cap


def numerator_q_degree(ts, D: FactoredProduct) -> int:
    """Structural bound on the q-span of the assembled numerator."""
    lo = hi = None
    for t in ts:
        if t.is_zero():
            continue
        a, b = (D.divide_exact(t.den) * t.num).q_extent()
        f = [e[0] for e in t.factor.terms]
        a, b = a + t.mono[0] + min(f), b + t.mono[0] + max(f)
        lo = a if lo is None else min(lo, a)
        hi = b if hi is None else max(hi, b)
    return 0 if lo is None else hi - lo


def _family_of(spec: SumSpec) -> str:
    return spec.family.value


def _cleared(P: DensePoly) -> DensePoly:
    return P.clear_q_units()[0] if not P.is_zero() else P


# ---------------------------------------------------------------------------
# check


def check(claim: CongruenceClaim, route: str = "residue", strict: bool = False) -> Verdict:
    """Decide claim.spec = 0 modulo claim.modulus.

    ``route="full"`` expands the whole numerator and divides; ``route="residue"``
    reduces it directly into Z[a,b,c][q] / ((q^s - 1)^E) for each factor.
    """
    if claim.mixed is not None:
        raise ValueError("use check_mixed for claims with a mixed factor")
    if route not in ("full", "residue"):
        raise ValueError(f"unknown route {route!r}")
    t0 = time.perf_counter()
    spec = claim.spec
    ts = terms(spec)
    D = ts[-1].den
    plan = []
    certificate = []
    for s, e in claim.modulus.factors:
        v, entry = _certificate(D, s, strict)
        plan.append((s, e, v))
        certificate.append(entry)
    mult, failing, size = {}, None, 0
    if route == "full":
        A = assemble(spec)
        size = A.numerator.nnz()
        for s, e, v in plan:
            mult[s] = phi_multiplicity(A.numerator, s, e + v) - v
    else:
        for s, e, v in plan:
            R = assemble_residue(spec, s, e + v)
            size = max(size, R.numerator.nnz())
            rep = R.numerator.to_power_basis()
            mult[s] = phi_multiplicity(rep, s, e + v) - v
    for s, e, v in plan:
        if mult[s] < e:
            failing = (s, e)
            break
    return Verdict(
        id=claim.id,
        family=_family_of(spec),
        n=spec.n,
        d=spec.d,
        r=spec.r,
        m_upper=spec.M,
        modulus=claim.modulus.label,
        holds=failing is None,
        failing_factor=failing,
        certificate=certificate,
        multiplicities=mult,
        num_terms=len(ts),
        max_q_degree=numerator_q_degree(ts, D),
        numerator_size=int(size),
        ms=(time.perf_counter() - t0) * 1e3,
        extra={"route": route},
    )


# ---------------------------------------------------------------------------
# mixed modulus (c - q^E) Phi_n


def divide_by_c_minus_qpower(P: DensePoly, E: int, var: str = "c") -> tuple[DensePoly, DensePoly]:
    """Synthetic division of P by (var - q^E) as a polynomial in var.

    Requires P polynomial in var (non-negative exponents).
    """
    i = P.names.index(var)
    if P.is_zero():
        return P, P
    if P.off[i] < 0:
        raise ValueError(f"difference is not polynomial in {var}")
    arr = np.moveaxis(P.arr.astype(object), i, 0)  # (var, q, ...)
    nv = arr.shape[0]
    top = P.off[i] + nv  # exponents P.off[i] .. top-1
    nq = arr.shape[1]
    width = nq + E * top
    coeff = [np.zeros((width,) + arr.shape[2:], dtype=object) for _ in range(top)]
    for j in range(nv):
        coeff[P.off[i] + j][:nq] = arr[j]
    quot = [None] * max(top - 1, 1)
    carry = np.zeros_like(coeff[0])
    for j in range(top - 1, 0, -1):
        carry = coeff[j] + _qshift_rows(carry, E)
        quot[j - 1] = carry
    rem = coeff[0] + _qshift_rows(carry, E) if top > 1 else coeff[0]
    if top == 1:
        quot = [np.zeros_like(coeff[0])]
    qarr = np.moveaxis(np.stack(quot), 0, i)
    rarr = np.moveaxis(rem[None, ...], 0, i)
    off_q = list(P.off)
    off_q[i] = 0
    return (
        DensePoly(qarr, tuple(off_q), None, P.names).trim(),
        DensePoly(rarr, tuple(off_q), None, P.names).trim(),
    )


def _qshift_rows(a: np.ndarray, E: int) -> np.ndarray:
    out = np.zeros_like(a)
    if E < a.shape[0]:
        out[E:] = a[: a.shape[0] - E]
        if a[a.shape[0] - E :].any():
            raise OverflowError("q-window too small")  # pragma: no cover
    return out


def _mixed_setup(n: int, d: int, r: int, M: int):
    lhs, rhs = proof_identity_2_6(n, d, r, M)
    E = d * n - n
    L = assemble(lhs)
    R = assemble(rhs)
    delta, lcm = cross_difference(L, R)
    delta = _cleared(delta)
    return lhs, rhs, L, R, delta, lcm, E


def _clear_var(P: DensePoly, var: str) -> DensePoly:
    if P.is_zero():
        return P
    i = P.names.index(var)
    off = list(P.off)
    off[i] = 0
    return DensePoly(P.arr, tuple(off), None, P.names)


def check_mixed(n: int, d: int, r: int, M: int) -> Verdict:
    """Decide LHS = RHS of the mixed-modulus identity modulo (c - q^{dn-n}) Phi_n(q)."""
    t0 = time.perf_counter()
    lhs, rhs, L, R, delta, lcm, E = _mixed_setup(n, d, r, M)
    # Certificates: the common denominator must be prime to both factors.
    v, entry = _certificate(lcm, n, strict=True)
    at = lcm.substitute_q_power("c", E)
    if at.is_zero():
        raise CertificateError(f"denominator vanishes at c = q^{E}")
    certificate = [entry, {"mixed": f"c-q^{E}", "den_at_root_nonzero": True}]
    # c is a unit of the ring; a monomial in c changes neither divisibility by
    # c - q^E nor by Phi_n.
    delta = _clear_var(delta, "c")
    quot, rem = divide_by_c_minus_qpower(delta, E)
    failing = None
    mult = {}
    if not rem.is_zero():
        failing = MIXED
    else:
        quot = _cleared(quot)
        mult[n] = phi_multiplicity(quot, n, 1)
        if mult[n] < 1:
            failing = (n, 1)
    ts = terms(lhs) + terms(rhs)
    return Verdict(
        id=f"proof2.7/n={n:02d}/d={d}/r={r:+d}/M={M:02d}/mod=(c-q^{E})Phi_{n}",
        family="proof2.7",
        n=n,
        d=d,
        r=r,
        m_upper=M,
        modulus=f"(c-q^{E})Phi_{n}",
        holds=failing is None,
        failing_factor=failing,
        certificate=certificate,
        multiplicities=mult,
        num_terms=len(ts),
        max_q_degree=int(delta.q_range()[1]) if not delta.is_zero() else 0,
        numerator_size=int(delta.nnz()),
        ms=(time.perf_counter() - t0) * 1e3,
    )


def check_identity_2_6(n: int, d: int, r: int, M: int) -> Verdict:
    """The same two sides with c = q^{dn-n}: an exact identity."""
    t0 = time.perf_counter()
    lhs, rhs = proof_identity_2_6(n, d, r, M, c_at_qE=True)
    delta, _ = cross_difference(assemble(lhs), assemble(rhs))
    ok = delta.is_zero()
    return Verdict(
        id=f"proof2.6/n={n:02d}/d={d}/r={r:+d}/M={M:02d}/exact",
        family="proof2.6",
        n=n,
        d=d,
        r=r,
        m_upper=M,
        modulus="exact",
        holds=ok,
        failing_factor=None if ok else "NONZERO",
        num_terms=2 * (M + 1),
        numerator_size=int(delta.nnz()),
        ms=(time.perf_counter() - t0) * 1e3,
    )


# ---------------------------------------------------------------------------
# the flip congruence and the vanishing tail summands


def lemma_2_1_sides(n: int, d: int, m: int, r: int, k: int):
    """(lnum, lden, rnum, rden) of the flip congruence, in the ring (q, a, b, c)."""
    if not 1 <= m <= n - 1:
        raise ValueError("need 1 <= m <= n-1")
    if (d * m + r) % n:
        raise ValueError("need d*m = -r (mod n)")
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    twice = m * (d * m - d + 2 * r)
    if twice % 2:
        raise ValueError("exponent m(dm-d+2r)/2 is not an integer")  # pragma: no cover - never odd
    lnum = pochhammer((r, 1, 0, 0), d, m - k)
    lden = pochhammer((d, -1, 0, 0), d, m - k)
    e = twice // 2 + (d - r) * k
    sign = -1 if (m - 2 * k) % 2 else 1
    rnum = pochhammer((r, 1, 0, 0), d, k).times_monomial((e, m - 2 * k, 0, 0), sign)
    rden = pochhammer((d, -1, 0, 0), d, k)
    return lnum, lden, rnum, rden


def check_lemma_2_1(n: int, d: int, m: int, r: int, k: int) -> Verdict:
    t0 = time.perf_counter()
    lnum, lden, rnum, rden = lemma_2_1_sides(n, d, m, r, k)
    certificate = []
    for den in (lden, rden):
        _, entry = _certificate(den, n, strict=True)
        certificate.append(entry)
    diff = (lnum * rden).expand_dense() - (rnum * lden).expand_dense()
    diff = _cleared(diff)
    mult = phi_multiplicity(diff, n, 1)
    return Verdict(
        id=f"lemma2.1/n={n:02d}/d={d}/r={r:+d}/m={m:02d}/k={k:02d}",
        family="lemma2.1",
        n=n,
        d=d,
        r=r,
        m_upper=m,
        modulus=f"Phi_{n}",
        holds=mult >= 1,
        failing_factor=None if mult >= 1 else (n, 1),
        certificate=certificate,
        multiplicities={n: mult},
        num_terms=2,
        max_q_degree=int(diff.q_range()[1]) if not diff.is_zero() else 0,
        numerator_size=int(diff.nnz()),
        ms=(time.perf_counter() - t0) * 1e3,
        extra={"k": k},
    )


def lemma_2_2_vanishing(n: int, d: int, r: int) -> list[tuple[int, bool]]:
    """For m < k <= n-1 the k-th summand alone is 0 modulo Phi_n.

    Each verdict is structural (Phi_n atoms in the numerator, none in the
    denominator) and confirmed by dividing the expanded numerator.
    """
    m = lemma_m(n, d, r)
    spec = SumSpec(Family.LEMMA_2_2, n, d, r, n - 1)
    out = []
    for k in range(m + 1, n):
        t = term(spec, k)
        structural = t.num.cyclotomic_valuation(n) >= 1 and t.den.coprime_to_cyclotomic(n)
        # the numerator reduced modulo q^n - 1, then divided by Phi_n
        R = assemble_terms([replace(t, den=FactoredProduct.one())], lambda: CyclicResidue.one(n, 1))
        expanded = phi_multiplicity(R.numerator.to_power_basis(), n, 1) == 1
        out.append((k, structural and expanded))
    return out


# ---------------------------------------------------------------------------
# brute-force oracle (sparse dictionaries only, one division by the
# expanded modulus)


def _specialised_valuation(D: FactoredProduct, s: int) -> int:
    """Phi_s multiplicity of D at (a, b, c) = (2, 3, 5), found by division.

    Atoms carrying a parameter specialise to 1 - 2^i 3^j 5^k q^x with
    2^i 3^j 5^k != 1, which has no root on the unit circle.
    """
    from fractions import Fraction

    vals = {"a": Fraction(2), "b": Fraction(3), "c": Fraction(5)}
    poly = UniPoly((1,))
    shift = 0
    for a, m in D.atoms.items():
        coef = Fraction(1)
        for name, e in zip(("a", "b", "c"), a[1:]):
            coef *= vals[name] ** e
        x = a[0]
        if x >= 0:
            f = UniPoly((1,) + (0,) * (x - 1) + (-coef,)) if x else UniPoly((1 - coef,))
        else:
            f = UniPoly((-coef,) + (0,) * (-x - 1) + (1,))
            shift += x
        poly = poly * f**m
    phi = cyclotomic(s)
    count = 0
    while poly.degree >= phi.degree:
        quot, rem = poly.divmod(phi)
        if rem.degree >= 0:
            break
        poly = quot
        count += 1
    return count


def _oracle_numerator(ts, D: FactoredProduct) -> LaurentPoly:
    total = LaurentPoly({}, ts[0].names)
    for t in ts:
        if t.is_zero():
            continue
        co = D.divide_exact(t.den) * t.num
        total = total + t.factor * co.expand_sparse().shift(t.mono)
    return total.clear_q_units()[0]


def oracle_check(claim: CongruenceClaim) -> bool:
    """Independent verdict: expand every summand over the common denominator,
    then divide once by the expanded modulus times the denominator's share."""
    ts = terms(claim.spec)
    D = ts[-1].den
    N = _oracle_numerator(ts, D)
    target = UniPoly((1,))
    for s, e in claim.modulus.factors:
        target = target * cyclotomic(s) ** (e + _specialised_valuation(D, s))
    _, rem = N.divrem_by_unipoly_in_q(target)
    return not rem


def oracle_lemma_2_1(n: int, d: int, m: int, r: int, k: int) -> bool:
    lnum, lden, rnum, rden = lemma_2_1_sides(n, d, m, r, k)
    diff = (lnum * rden).expand_sparse() - (rnum * lden).expand_sparse()
    if not diff:
        return True
    _, rem = diff.clear_q_units()[0].divrem_by_unipoly_in_q(cyclotomic(n))
    return not rem


def _over_lcm(ts, lcm: FactoredProduct) -> LaurentPoly:
    total = LaurentPoly({}, ts[0].names)
    for t in ts:
        if t.is_zero():
            continue
        total = total + t.factor * (lcm.divide_exact(t.den) * t.num).expand_sparse().shift(t.mono)
    return total


def _shared_lcm(lt, rt) -> FactoredProduct:
    lcm = lt[-1].den.lcm(rt[-1].den)
    return FactoredProduct(1, (0,) * 4, lcm.atoms)


def oracle_identity_2_6(n: int, d: int, r: int, M: int) -> bool:
    lhs, rhs = proof_identity_2_6(n, d, r, M, c_at_qE=True)
    lt, rt = terms(lhs), terms(rhs)
    lcm = _shared_lcm(lt, rt)
    return not (_over_lcm(lt, lcm) - _over_lcm(rt, lcm))


def oracle_mixed(n: int, d: int, r: int, M: int) -> bool:
    """(c - q^E) Phi_n | Delta  iff  Delta(c = q^E) = 0 and Phi_n | Delta (coprime factors)."""
    lhs, rhs = proof_identity_2_6(n, d, r, M)
    lt, rt = terms(lhs), terms(rhs)
    lcm = _shared_lcm(lt, rt)
    delta = _over_lcm(lt, lcm) - _over_lcm(rt, lcm)
    E = d * n - n
    at_root = delta.substitute("c", LaurentPoly.var("q", E))
    if at_root:
        return False
    _, rem = delta.clear_q_units()[0].divrem_by_unipoly_in_q(cyclotomic(n))
    return not rem


# ---------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class GridItem:
    """A picklable unit of grid work."""

    kind: str  # "claim", "mixed", "identity", "lemma2.1"
    claim: CongruenceClaim | None = None
    args: tuple = ()

    @property
    def id(self) -> str:
        if self.kind == "claim":
            return self.claim.id
        return f"{self.kind}/{self.args}"


def _theorem_modulus(case: str, n: int, d: int) -> ModulusSpec:
    if case == "eq1.5":
        e = 2 if (n + 1) % d == 0 else 1
        return ModulusSpec.phi_power(n, e)
    return modulus_for_theorem(n, d, case)


def _inflate(n: int) -> ModulusSpec:
    return ModulusSpec.phi_power(n, 3)


def build_claims(
    family: str,
    n_values: Iterable[int],
    d_values: Iterable[int],
    r_values: Sequence[int] = (1, -1),
    mutation: str | None = None,
) -> list[GridItem]:
    """Enumerate admissible instances of one family in a deterministic order.

    ``mutation`` is a summand mutation or ``inflate-modulus`` (Phi_n^3 in
    non-strong theorem cases).
    """
    if family not in GRID_FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    items = []
    inflate = mutation == "inflate-modulus"
    sum_mut = None if inflate else mutation
    for d in d_values:
        for n in n_values:
            if n < 1 or d < 1 or gcd(n, d) != 1:
                continue
            if family in ("thm1.1", "thm1.2", "eq1.5"):
                if d < 3 or n < 2:
                    continue
                case = "thm1.1" if family == "eq1.5" else family
                if inflate:
                    if is_strong_case(n, d, case):
                        continue
                    modulus = _inflate(n)
                else:
                    modulus = _theorem_modulus(family, n, d)
                spec = theorem_spec(family, n, d, sum_mut)
                items.append(GridItem("claim", CongruenceClaim(spec, modulus)))
                continue
            for r in r_values:
                if family == "lemma2.1":
                    if n < 2 or (gcd(n, d) != 1):
                        continue
                    m = lemma_m(n, d, r)
                    if m < 1:
                        continue
                    for k in range(m + 1):
                        items.append(GridItem("lemma2.1", args=(n, d, m, r, k)))
                elif family == "lemma2.2":
                    if n < 2:
                        continue
                    for M in sorted({lemma_m(n, d, r), n - 1}):
                        spec = SumSpec(Family.LEMMA_2_2, n, d, r, M, (), sum_mut)
                        items.append(GridItem("claim", CongruenceClaim(spec, ModulusSpec.q_bracket(n))))
                else:
                    if r not in (1, -1) or d < 3 or n < 2 or (n + r) % d:
                        continue
                    L = theorem_L(n, d, r)
                    for M in sorted({L, n - 1}):
                        if family == "thm2.3":
                            spec = SumSpec(Family.THM_2_3, n, d, r, M, (("c", 0),), sum_mut)
                            modulus = _inflate(n) if inflate else ModulusSpec.bracket_times_phi(n)
                            items.append(GridItem("claim", CongruenceClaim(spec, modulus)))
                        elif family == "proof2.7":
                            items.append(GridItem("mixed", args=(n, d, r, M)))
                        else:
                            items.append(GridItem("identity", args=(n, d, r, M)))
    return items


def run_claim(item: GridItem, route: str = "residue", strict: bool = False) -> Verdict:
    if item.kind == "claim":
        return check(item.claim, route=route, strict=strict)
    if item.kind == "mixed":
        return check_mixed(*item.args)
    if item.kind == "identity":
        return check_identity_2_6(*item.args)
    if item.kind == "lemma2.1":
        return check_lemma_2_1(*item.args)
    raise ValueError(item.kind)  # pragma: no cover


def _run_star(payload):
    item, route, strict = payload
    return run_claim(item, route, strict)


def run_grid(
    family: str,
    n_values: Iterable[int],
    d_values: Iterable[int],
    r_values: Sequence[int] = (1, -1),
    mutation: str | None = None,
    route: str = "residue",
    strict: bool = False,
    jobs: int | None = 1,
) -> list[Verdict]:
    """Run every admissible claim; verdicts are returned sorted by claim id."""
    items = build_claims(family, list(n_values), list(d_values), r_values, mutation)
    jobs = jobs or os.cpu_count() or 1
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(_run_star, [(it, route, strict) for it in items]))
    else:
        verdicts = [run_claim(it, route, strict) for it in items]
    return sorted(verdicts, key=lambda v: v.id)
