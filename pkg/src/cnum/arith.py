"""Exact integer arithmetic: square-free factorization, Jacobi symbols, root numbers."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InvalidInput, NotPrime, NotSquarefree

MAX_INPUT = 2**63
TRIAL_LIMIT = 10**6

# Deterministic Miller-Rabin witnesses for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class PrimeProfile:
    """Factorization of a square-free n with its residue bookkeeping.

    ``k`` counts odd prime factors, ``a`` is 1 for odd n and 0 for even n.
    """

    n: int
    primes: tuple[int, ...] = field(default=())

    @property
    def k(self) -> int:
        return sum(1 for p in self.primes if p != 2)

    @property
    def a(self) -> int:
        return 0 if 2 in self.primes else 1

    @property
    def residue8(self) -> int:
        return self.n % 8

    @property
    def odd_primes(self) -> tuple[int, ...]:
        return tuple(p for p in self.primes if p != 2)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def _pollard_rho(n: int, rng: random.Random) -> int:
    # Brent's variant; n is odd and composite.
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: list[int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out.append(n)
        return
    d = _pollard_rho(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


@lru_cache(maxsize=1)
def _small_primes() -> list[int]:
    return primes_upto(TRIAL_LIMIT).tolist()


def factorize(n: int) -> dict[int, int]:
    """Full factorization ``{p: e}`` of 1 <= n < 2**63."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidInput(f"expected an integer, got {n!r}")
    n = int(n)
    if n <= 0:
        raise InvalidInput(f"n must be positive, got {n}")
    if n >= MAX_INPUT:
        raise InvalidInput(f"n must be below 2**63, got {n}")
    fac: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            fac[p] = e
    if n > 1:
        rest: list[int] = []
        _split(n, rest, random.Random(n))
        for q in rest:
            fac[q] = fac.get(q, 0) + 1
    return dict(sorted(fac.items()))


@lru_cache(maxsize=1 << 16)
def factor_squarefree(n: int) -> PrimeProfile:
    """Factor a square-free positive integer.

    >>> factor_squarefree(34).primes
    (2, 17)
    """
    if isinstance(n, (int, np.integer)) and not isinstance(n, bool) and n == 0:
        raise InvalidInput("n must be positive")
    fac = factorize(n)
    for p, e in fac.items():
        if e > 1:
            raise NotSquarefree(f"{n} is divisible by {p}^2")
    return PrimeProfile(int(n), tuple(fac))


def is_squarefree(n: int) -> bool:
    try:
        factor_squarefree(n)
    except NotSquarefree:
        return False
    return True


def squarefree_mask(lo: int, hi: int) -> np.ndarray:
    """Boolean mask over ``range(lo, hi + 1)`` marking square-free entries."""
    if lo < 1 or hi < lo:
        return np.zeros(max(hi - lo + 1, 0), dtype=bool)
    mask = np.ones(hi - lo + 1, dtype=bool)
    for p in primes_upto(math.isqrt(hi)):
        q = int(p) * int(p)
        start = -(-lo // q) * q
        mask[start - lo :: q] = False
    return mask


def primes_upto(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def jacobi(a: int, m: int) -> int:
    """Jacobi symbol (a/m) for odd positive m."""
    if m <= 0 or m % 2 == 0:
        raise InvalidInput(f"Jacobi symbol needs an odd positive modulus, got {m}")
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def legendre(a: int, p: int) -> int:
    if not is_probable_prime(p) or p == 2:
        raise NotPrime(f"{p} is not an odd prime")
    return jacobi(a, p)


def kronecker(a: int, m: int) -> int:
    """Kronecker symbol (a/m) for m > 0, extending Jacobi to even m."""
    if m <= 0:
        raise InvalidInput(f"modulus must be positive, got {m}")
    result = 1
    while m % 2 == 0:
        m //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    return result * jacobi(a, m) if m > 1 else result


def root_number(n: int) -> int:
    """Sign of the functional equation of ny^2 = x^3 - x."""
    r = n % 8
    if r in (1, 2, 3):
        return 1
    if r in (5, 6, 7):
        return -1
    raise InvalidInput(f"{n} is not square-free (n = {r} mod 8)")
