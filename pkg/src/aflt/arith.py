"""Integer helpers: valuations, Jacobi symbols, primality and factorization.

Factorization is deterministic: trial division by the primes below
``TRIAL_LIMIT`` followed by Brent's variant of Pollard rho with the fixed
polynomial x^2 + 1 and starting points 2, 3, 4, ...  The iteration budget
is shared across one ``factorint`` call, so identical inputs always give
identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt, inf

import numpy as np

TRIAL_LIMIT = 10**5
DEFAULT_BUDGET = 2_000_000
# Miller-Rabin with the first twelve primes as bases is exact below 3.18e23.
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_PROVEN_BOUND = 2**64


@lru_cache(maxsize=None)
def primes_below(n: int) -> tuple[int, ...]:
    if n < 3:
        return ()
    sieve = np.ones(n, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n - 1) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return tuple(int(p) for p in np.flatnonzero(sieve))


def vp(n: int, p: int) -> int | float:
    """Exponent of the prime p in the integer n; ``inf`` for n == 0."""
    if n == 0:
        return inf
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def jacobi(a: int, n: int) -> int:
    assert n > 0 and n & 1, n
    a %= n
    acc = 1
    while a:
        while not a & 1:
            a >>= 1
            if n & 7 in (3, 5):
                acc = -acc
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            acc = -acc
        a %= n
    return acc if n == 1 else 0


def is_probable_prime(n: int) -> bool:
    """Strong probable prime test to the bases MR_BASES.

    Exact for n < MR_PROVEN_BOUND (and well beyond); above that a True is
    only a strong-probable-prime verdict.
    """
    if n < 2:
        return False
    for p in MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    for a in MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    return is_probable_prime(n)


def pollard_brent(n: int, budget: int, x0: int = 2) -> tuple[int | None, int]:
    """Find a nontrivial factor of the odd composite n with f(x) = x^2 + 1.

    Returns (factor or None, iterations used).
    """
    y, r, q, g = x0 % n, 1, 1, 1
    m = 128
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + 1) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + 1) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        used += r
        if used > budget:
            return None, used
        r *= 2
    if g == n:
        # Batch gcd overshot; step back one at a time.
        while True:
            ys = (ys * ys + 1) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    if g == n:
        return None, used
    return g, used


@dataclass
class Factorization:
    n: int
    factors: dict[int, int] = field(default_factory=dict)
    unfactored: list[int] = field(default_factory=list)
    # every prime factor is below MR_PROVEN_BOUND
    proven: bool = True

    @property
    def complete(self) -> bool:
        return not self.unfactored

    @property
    def omega(self) -> int:
        return len(self.factors)

    def value(self) -> int:
        out = 1
        for p, e in self.factors.items():
            out *= p**e
        for c in self.unfactored:
            out *= c
        return out


def factorint(n: int, budget: int = DEFAULT_BUDGET) -> Factorization:
    """Factor |n| > 0 within a rho iteration budget."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = Factorization(n)
    for p in primes_below(TRIAL_LIMIT):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.factors[p] = e
    stack = [n] if n > 1 else []
    remaining = budget
    while stack:
        m = stack.pop()
        if m < TRIAL_LIMIT**2 or is_probable_prime(m):
            out.factors[m] = out.factors.get(m, 0) + 1
            if m >= MR_PROVEN_BOUND:
                out.proven = False
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        g = None
        x0 = 2
        while g is None and remaining > 0:
            g, used = pollard_brent(m, remaining, x0)
            remaining -= used
            x0 += 1
        if g is None:
            out.unfactored.append(m)
        else:
            stack += [g, m // g]
    out.factors = dict(sorted(out.factors.items()))
    out.unfactored.sort()
    return out


def prime_factors(n: int) -> list[int]:
    f = factorint(n)
    if not f.complete:
        raise ValueError(f"could not factor {n}")
    return list(f.factors)


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).factors.values())


def squarefree_split(f: Factorization) -> tuple[int, int]:
    """Write a completely factored n as d * w^2 with d squarefree."""
    assert f.complete
    d = w = 1
    for p, e in f.factors.items():
        if e & 1:
            d *= p
        w *= p ** (e // 2)
    return d, w


def totient(n: int) -> int:
    out = n
    for p in prime_factors(n):
        out -= out // p
    return out


def omega(n: int) -> int:
    return len(prime_factors(n))
