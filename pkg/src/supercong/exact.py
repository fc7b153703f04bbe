"""Exact integer/rational helpers and p-adic valuations.

Python's ``int`` is already arbitrary precision and ``fractions.Fraction``
is always kept reduced with a positive denominator, so both are used as the
numeric substrate directly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "Fraction",
    "as_fraction",
    "is_prime",
    "padic_valuation",
    "rational_mod_prime_power",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    """Deterministic trial division (the primes used here are small)."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not prime")


def _int_valuation(n: int, p: int) -> int:
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(x, p: int) -> int:
    """Return v_p(x) = v_p(numerator) - v_p(denominator) for nonzero rational x."""
    _require_prime(p)
    x = as_fraction(x)
    if x == 0:
        raise ValueError("valuation of zero undefined")
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def rational_mod_prime_power(x, p: int, r: int) -> int:
    """Canonical residue of a p-integral rational modulo p**r, in [0, p**r)."""
    _require_prime(p)
    if r < 1:
        raise ValueError("exponent r must be positive")
    x = as_fraction(x)
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not {p}-integral")
    mod = p**r
    return x.numerator * pow(x.denominator, -1, mod) % mod
