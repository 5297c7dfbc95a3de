"""Exact integer helpers: gcd/lcm, CRT merging, totient, valuations.

Python ints are arbitrary precision, so they serve directly as the
big-integer type.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .errors import DomainError

__all__ = [
    "ResidueConstraint", "gcd", "lcm", "lcm_upto", "crt_merge", "crt_merge_all",
    "euler_phi", "is_prime", "valuation", "primes_upto", "inv_mod",
]


@dataclass(frozen=True)
class ResidueConstraint:
    """x ≡ r (mod m), stored with 0 <= r < m."""
    r: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"modulus must be >= 1, got {self.m}")
        if not 0 <= self.r < self.m:
            object.__setattr__(self, "r", self.r % self.m)

    def holds(self, x: int) -> bool:
        return (x - self.r) % self.m == 0

    def __str__(self):
        return f"{self.r} mod {self.m}"


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    return math.lcm(a, b)


def lcm_upto(x: int) -> int:
    """lcm(1, ..., x)."""
    if x < 1:
        raise DomainError(f"lcm_upto needs x >= 1, got {x}")
    # product of the largest prime powers <= x
    out = 1
    for p in primes_upto(x):
        q = p
        while q * p <= x:
            q *= p
        out *= q
    return out


def inv_mod(a: int, m: int) -> int:
    return pow(a, -1, m)


def crt_merge(c1: ResidueConstraint, c2: ResidueConstraint) -> ResidueConstraint | None:
    """Combine two congruences into one modulo lcm(m1, m2).

    Returns None when the two are incompatible.
    """
    r1, m1, r2, m2 = c1.r, c1.m, c2.r, c2.m
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    if m2 == 1 or m1 % m2 == 0:
        return c1
    if m1 == 1 or m2 % m1 == 0:
        return c2
    m1g, m2g = m1 // g, m2 // g
    # r1 + m1*t ≡ r2 (mod m2)  =>  t ≡ (r2-r1)/g * inv(m1/g) (mod m2/g)
    t = (r2 - r1) // g * pow(m1g, -1, m2g) % m2g
    m = m1 * m2g
    return ResidueConstraint((r1 + m1 * t) % m, m)


def crt_merge_all(constraints) -> ResidueConstraint | None:
    acc = ResidueConstraint(0, 1)
    for c in constraints:
        acc = crt_merge(acc, c)
        if acc is None:
            return None
    return acc


def _factor_small(k: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= k:
        while k % d == 0:
            out[d] = out.get(d, 0) + 1
            k //= d
        d += 1 if d == 2 else 2
    if k > 1:
        out[k] = out.get(k, 0) + 1
    return out


def euler_phi(k: int) -> int:
    if k < 1:
        raise DomainError(f"euler_phi needs k >= 1, got {k}")
    return reduce(lambda acc, pe: acc * (pe[0] - 1) * pe[0] ** (pe[1] - 1),
                  _factor_small(k).items(), 1)


def is_prime(p: int) -> bool:
    """Trial division; inputs here are small."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def valuation(x: int, p: int) -> int:
    """Largest n with p**n dividing x."""
    if x == 0:
        raise DomainError("valuation of 0 is infinite")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    n = 0
    while x % p == 0:
        x //= p
        n += 1
    return n


def primes_upto(n: int) -> list[int]:
    """Primes <= n (sieve of Eratosthenes)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytes(len(range(i * i, n + 1, i)))
    return [i for i, b in enumerate(sieve) if b]
