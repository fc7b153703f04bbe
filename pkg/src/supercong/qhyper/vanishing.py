"""Least index at which (q^x; q^d)_k picks up a factor divisible by Phi_n(q)."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def min_vanishing_index(x: int, d: int, n: int) -> int | None:
    """Least k >= 1 such that (q^x; q^d)_k = 0 (mod Phi_n(q)), or None.

    (q^x; q^d)_k contains 1 - q^{x+dj} for j < k, and Phi_n divides that
    factor exactly when n | x + dj.
    """
    if d < 1 or n < 2:
        raise ValueError("need d >= 1 and n >= 2")
    g = gcd(d, n)
    if x % g:
        return None
    for j in range(n // g):
        if (x + d * j) % n == 0:
            return j + 1
    return None  # pragma: no cover - unreachable when g | x


@dataclass(frozen=True)
class VanishingChain:
    n: int
    d: int
    r: int
    f_d: int
    f_r: int
    L: int
    f_2r: int
    f_d_minus_r: int

    @property
    def holds(self) -> bool:
        return self.f_d >= self.f_r > self.L >= self.f_2r >= self.f_d_minus_r

    @property
    def matches_closed_forms(self) -> bool:
        n, d, r = self.n, self.d, self.r
        return (
            self.f_d_minus_r * d == n + r
            and self.f_r * d == d * (n + 1) - (n + r)
            and self.f_d == n
            and self.f_2r * d == d * (n + 1) - 2 * (n + r)
        )


def vanishing_chain(n: int, d: int, r: int) -> VanishingChain:
    """Evaluate f(d) >= f(r) > (dn-n-r)/d >= f(2r) >= f(d-r) for admissible (n, d, r)."""
    if r not in (1, -1) or d < 3 or n < 2 or gcd(n, d) != 1 or (n + r) % d:
        raise ValueError(f"(n, d, r) = ({n}, {d}, {r}) is not admissible")
    return VanishingChain(
        n,
        d,
        r,
        min_vanishing_index(d, d, n),
        min_vanishing_index(r, d, n),
        (d * n - n - r) // d,
        min_vanishing_index(2 * r, d, n),
        min_vanishing_index(d - r, d, n),
    )


def admissible_triples(n_max: int, d_values=(3, 4, 5)) -> list[tuple[int, int, int]]:
    out = []
    for d in d_values:
        for n in range(2, n_max + 1):
            for r in (1, -1):
                if gcd(n, d) == 1 and (n + r) % d == 0:
                    out.append((n, d, r))
    return out
