"""Prime sieves: a plain sieve, a segmented sieve and a smallest-prime-factor table."""

from __future__ import annotations

from math import isqrt

import numpy as np


def primes_upto(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def primes_in_range(lo: int, hi: int, base: np.ndarray | None = None) -> np.ndarray:
    """Primes in ``[lo, hi)`` by sieving the segment with the primes up to ``sqrt(hi)``."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    if base is None:
        base = primes_upto(isqrt(hi - 1) + 1)
    seg = np.ones(hi - lo, dtype=bool)
    for p in base:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        seg[start - lo :: p] = False
    return (np.nonzero(seg)[0] + lo).astype(np.int64)


def spf_table(n: int) -> np.ndarray:
    """``spf[k]`` is the smallest prime factor of ``k`` for ``2 <= k <= n``."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if p * p > n:
            break
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.nonzero(spf == 0)[0]
    spf[rest] = rest
    return spf


def prime_factors(n: int, spf: np.ndarray | None = None) -> list[int]:
    """Distinct prime factors, by table lookup when ``n`` is covered, else trial division."""
    out: list[int] = []
    if spf is not None and n < len(spf):
        while n > 1:
            p = int(spf[n])
            out.append(p)
            while n % p == 0:
                n //= p
        return out
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True
