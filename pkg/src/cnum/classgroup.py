"""Class groups of imaginary quadratic fields via reduced binary quadratic forms.

The group is realised as the set of reduced positive definite forms of the
fundamental discriminant ``D`` of Q(sqrt(-d)) under Gauss composition.
Genus theory quantities (the 2-rank ``h2`` and the genus number
``g = #(2 Cl)``) are derived from the elementary divisors, and a second,
independent route to the parity of ``g`` goes through the Redei matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import factor_squarefree, factorize, kronecker
from .errors import (
    DiscriminantMismatch,
    DiscriminantTooLarge,
    InvalidDiscriminant,
    InvalidInput,
)

MAX_ABS_DISCRIMINANT = 10**7


@dataclass(frozen=True, order=True)
class QuadraticForm:
    a: int
    b: int
    c: int

    @property
    def D(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def reduced(self) -> "QuadraticForm":
        a, b, c = self.a, self.b, self.c
        if a <= 0 or b * b - 4 * a * c >= 0:
            raise InvalidInput(f"form {self} is not positive definite")
        while True:
            # normalize b into (-a, a]
            if not (-a < b <= a):
                r = (a - b) // (2 * a)
                b, c = b + 2 * r * a, a * r * r + b * r + c
            if a > c:
                a, b, c = c, -b, a
                continue
            if a == c and b < 0:
                b = -b
            return QuadraticForm(a, b, c)

    def __mul__(self, other: "QuadraticForm") -> "QuadraticForm":
        return compose(self, other)

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


def principal_form(D: int) -> QuadraticForm:
    b = D % 2
    return QuadraticForm(1, b, (b - D) // 4)


def inverse(f: QuadraticForm) -> QuadraticForm:
    return QuadraticForm(f.a, -f.b, f.c).reduced()


def _check_d(d: int) -> None:
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 1:
        raise InvalidInput(f"d must be a positive integer, got {d!r}")
    factor_squarefree(int(d))


def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt(-d)) for square-free d >= 1."""
    _check_d(d)
    return -d if d % 4 == 3 else -4 * d


def is_fundamental(D: int) -> bool:
    if D >= 0:
        return False
    m = -D
    if D % 4 == 1:
        return all(e == 1 for e in factorize(m).values())
    if D % 4 == 0:
        q = m // 4
        if (-q) % 4 not in (2, 3):
            return False
        return all(e == 1 for e in factorize(q).values())
    return False


def _check_D(D: int) -> None:
    if not is_fundamental(D):
        raise InvalidDiscriminant(f"{D} is not a negative fundamental discriminant")
    if -D > MAX_ABS_DISCRIMINANT:
        raise DiscriminantTooLarge(f"|D| = {-D} exceeds {MAX_ABS_DISCRIMINANT}")


@lru_cache(maxsize=4096)
def _reduced_forms(D: int) -> tuple[QuadraticForm, ...]:
    A = math.isqrt(-D // 3)
    a = np.arange(1, A + 1, dtype=np.int64)[:, None]
    b = np.arange(-A, A + 1, dtype=np.int64)[None, :]
    num = b * b - D
    four_a = 4 * a
    ok = (np.abs(b) <= a) & (b > -a) & (num % four_a == 0)
    c = num // four_a
    ok &= (c >= a) & ((b >= 0) | (c > a))
    ia, ib = np.nonzero(ok)
    forms = [
        QuadraticForm(int(a[i, 0]), int(b[0, j]), int(c[i, j])) for i, j in zip(ia, ib)
    ]
    return tuple(sorted(forms))


def reduced_forms(D: int) -> list[QuadraticForm]:
    """All reduced forms of discriminant D, one per class, sorted by (a, b)."""
    _check_D(D)
    return list(_reduced_forms(D))


def compose(f: QuadraticForm, g: QuadraticForm) -> QuadraticForm:
    """Gauss (Dirichlet) composition followed by reduction."""
    D = f.D
    if g.D != D:
        raise DiscriminantMismatch(f"{f} has D={D}, {g} has D={g.D}")
    a1, b1 = f.a, f.b
    a2, b2 = g.a, g.b
    beta = (b1 + b2) // 2
    e, x, y = _xgcd(a1, a2)
    e, z, w = _xgcd(e, beta)
    # e = z*x*a1 + z*y*a2 + w*beta = gcd(a1, a2, beta)
    a3 = a1 * a2 // (e * e)
    b3 = (z * x * a1 * b2 + z * y * a2 * b1 + w * (b1 * b2 + D) // 2) // e
    b3 %= 2 * a3
    c3 = (b3 * b3 - D) // (4 * a3)
    return QuadraticForm(a3, b3, c3).reduced()


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def form_power(f: QuadraticForm, k: int) -> QuadraticForm:
    result = principal_form(f.D)
    base = f
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def _elementary_divisors(forms: list[QuadraticForm]) -> list[int]:
    h = len(forms)
    if h == 1:
        return []
    identity = principal_form(forms[0].D)
    # For the p-part Z/p^e1 + ... + Z/p^er, #{x : p^k x = 0} = p^(sum_i min(e_i, k)).
    exponents_by_prime: dict[int, list[int]] = {}
    for p, e in factorize(h).items():
        cofactor = h // p**e
        part = {form_power(f, cofactor) for f in forms}
        sums = [0]
        for k in range(1, e + 1):
            killed = sum(1 for x in part if form_power(x, p**k) == identity)
            sums.append(round(math.log(killed, p)))
        # number of cyclic factors of order >= p^k is sums[k] - sums[k-1]
        counts = [sums[k] - sums[k - 1] for k in range(1, e + 1)] + [0]
        exps = []
        for k in range(1, e + 1):
            exps += [k] * (counts[k - 1] - counts[k])
        exponents_by_prime[p] = sorted(exps, reverse=True)
    rank = max(len(v) for v in exponents_by_prime.values())
    divisors = [1] * rank
    for p, exps in exponents_by_prime.items():
        for i, e in enumerate(exps):
            divisors[rank - 1 - i] *= p**e
    return divisors


def group_structure(D: int) -> list[int]:
    """Invariant factors d1 | d2 | ... of Cl(D); the trivial group gives []."""
    _check_D(D)
    return list(_structure(D))


@lru_cache(maxsize=4096)
def _structure(D: int) -> tuple[int, ...]:
    return tuple(_elementary_divisors(list(_reduced_forms(D))))


@dataclass(frozen=True)
class ClassGroupData:
    d: int
    D: int
    forms: tuple[QuadraticForm, ...]
    elementary_divisors: tuple[int, ...]

    @property
    def h(self) -> int:
        return len(self.forms)

    @property
    def h2(self) -> int:
        return sum(1 for m in self.elementary_divisors if m % 2 == 0)

    @property
    def g(self) -> int:
        return self.h >> self.h2


def class_group(d: int) -> ClassGroupData:
    D = fundamental_discriminant(d)
    _check_D(D)
    return ClassGroupData(int(d), D, _reduced_forms(D), _structure(D))


def genus_number(d: int) -> int:
    """g(d) = #(2 Cl(Q(sqrt(-d)))), computed from the class group itself."""
    return class_group(d).g


def two_rank(d: int) -> int:
    """dim_F2 Cl/2Cl from the elementary divisors."""
    return class_group(d).h2


def discriminant_prime_count(d: int) -> int:
    return len(factorize(-fundamental_discriminant(d)))


# --- Redei matrix --------------------------------------------------------


def prime_discriminants(D: int) -> list[tuple[int, int]]:
    """Split D into prime discriminants; returns [(p, p*)] sorted by p."""
    out = []
    rest = D
    for p in factorize(-D):
        if p == 2:
            continue
        pstar = p if p % 4 == 1 else -p
        out.append((p, pstar))
        rest //= pstar
    if rest != 1:
        # rest is -4, 8 or -8
        out.insert(0, (2, rest))
    return out


@dataclass(frozen=True)
class RedeiMatrix:
    d: int
    primes: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def mu(self) -> int:
        return len(self.primes)

    @property
    def rank(self) -> int:
        return gf2_rank(self.entries)

    @property
    def four_rank(self) -> int:
        return self.mu - 1 - self.rank


def redei_matrix(d: int) -> RedeiMatrix:
    """Redei matrix of Q(sqrt(-d)) over F2.

    Row i belongs to the prime p_i | D and column j to the prime
    discriminant p_j*; off the diagonal the entry is 1 exactly when
    (p_j* / p_i) = -1 (Kronecker symbol).  The diagonal makes every row
    sum to 0, i.e. it records (D / p_i*) restricted to p_i.
    """
    D = fundamental_discriminant(d)
    pd = prime_discriminants(D)
    mu = len(pd)
    rows = []
    for i, (p, _) in enumerate(pd):
        row = [0] * mu
        for j, (_, qstar) in enumerate(pd):
            if i != j:
                row[j] = 1 if kronecker(qstar, p) == -1 else 0
        row[i] = sum(row) % 2
        rows.append(tuple(row))
    return RedeiMatrix(int(d), tuple(p for p, _ in pd), tuple(rows))


def gf2_rank(rows) -> int:
    vecs = [int("".join(map(str, r)), 2) if r else 0 for r in rows]
    rank = 0
    while vecs:
        pivot = max(vecs)
        vecs.remove(pivot)
        if pivot == 0:
            break
        rank += 1
        top = pivot.bit_length() - 1
        vecs = [v ^ pivot if (v >> top) & 1 else v for v in vecs]
    return rank


@lru_cache(maxsize=1 << 18)
def genus_parity_redei(d: int) -> int:
    """g(d) mod 2 from the Redei 4-rank: 1 iff Cl has no element of order 4."""
    return 1 if redei_matrix(d).four_rank == 0 else 0
