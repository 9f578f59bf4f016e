"""Mod-2 decomposition sums over factorizations of n into coprime parts.

A decomposition of a square-free n is a set partition of its prime
factors; each block contributes the genus number of its product.  Only the
parity of these sums carries information, so every quantity here is a
bit.  Two counting conventions are supported:

``MULTISET``
    every admissible partition counts once.
``LABELED``
    a partition counts once per admissible choice of distinguished parts
    (``d0``, and ``d1`` for the second sum).
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Callable

from .arith import PrimeProfile, factor_squarefree
from .classgroup import genus_number, genus_parity_redei
from .errors import TooManyPrimes, WrongResidueClass

MAX_DP_PRIMES = 20
MAX_BRUTE_PRIMES = 8


class Convention(enum.Enum):
    MULTISET = "multiset"
    LABELED = "labeled"


class Shape(enum.Enum):
    """Partition constraints.

    FIRST: at most one block not = 1 mod 8 (it is d0, when present).
    SECOND: exactly one block = 5, 6, 7 mod 8 (d0), at most one block = 2, 3
    mod 8, every other block = 1 mod 8, and a d1 slot must be filled.
    """

    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class Constraint:
    shape: Shape
    convention: Convention = Convention.MULTISET


THEOREM1 = Constraint(Shape.FIRST)
FIRST_SUM = Constraint(Shape.FIRST)
SECOND_SUM = Constraint(Shape.SECOND)


@dataclass(frozen=True)
class DecompositionSpec:
    n: int
    profile: PrimeProfile
    convention: Convention = Convention.MULTISET


@dataclass(frozen=True)
class ParityResult:
    s1: int
    s2: int
    terms_evaluated: int
    convention_used: Convention


D0_RESIDUES = frozenset((5, 6, 7))
D1_RESIDUES = frozenset((2, 3))


def known_even_genus(primes: tuple[int, ...]) -> bool:
    """Shapes of d for which Redei theory forces g(d) even."""
    odd = [p for p in primes if p != 2]
    if not odd:
        return False
    d = 1
    for p in primes:
        d *= p
    if all(p % 8 in (1, 7) for p in odd):
        if 2 in primes or d % 8 == 1:
            return True
    if 2 not in primes and d % 8 == 1 and all(p % 4 == 1 for p in odd):
        return True
    return False


def _default_gparity(d: int) -> int:
    return genus_parity_redei(d)


class _Engine:
    """Subset DP over the prime set of one n."""

    def __init__(self, primes: tuple[int, ...], gparity: Callable[[int], int]):
        k = len(primes)
        self.k = k
        self.full = (1 << k) - 1
        self.prod = [1] * (1 << k)
        for mask in range(1, 1 << k):
            low = mask & -mask
            i = low.bit_length() - 1
            self.prod[mask] = self.prod[mask ^ low] * primes[i]
        self.primes = primes
        self._gparity = gparity
        self._g: dict[int, int] = {}
        self._F: dict[int, tuple[int, int]] = {0: (1, 0)}
        self.visits = 0

    def g(self, mask: int) -> int:
        bit = self._g.get(mask)
        if bit is None:
            sub = tuple(p for i, p in enumerate(self.primes) if mask >> i & 1)
            bit = 0 if known_even_genus(sub) else self._gparity(self.prod[mask])
            self._g[mask] = bit
        return bit

    def res(self, mask: int) -> int:
        return self.prod[mask] % 8

    def F(self, S: int) -> tuple[int, int]:
        """Parities of sum of prod g over partitions of S into blocks = 1 mod 8,
        split by number of blocks (even, odd)."""
        hit = self._F.get(S)
        if hit is not None:
            return hit
        low = S & -S
        rest = S ^ low
        even = odd = 0
        sub = rest
        while True:
            block = sub | low
            self.visits += 1
            if self.res(block) == 1 and self.g(block):
                e, o = self.F(S ^ block)
                even ^= o
                odd ^= e
            if sub == 0:
                break
            sub = (sub - 1) & rest
        self._F[S] = (even, odd)
        return even, odd

    def _ones(self, S: int, convention: Convention) -> int:
        """Weighted parity of all-(1 mod 8) partitions of a nonempty S, with
        the weight being the number of ways to pick one block as a slot."""
        e, o = self.F(S)
        if convention is Convention.MULTISET:
            return e ^ o
        return o

    def first(self, convention: Convention) -> int:
        full = self.full
        if full == 0:
            return 1
        total = 0
        for d0 in _submasks(full):
            self.visits += 1
            if self.res(d0) != 1 and self.g(d0):
                e, o = self.F(full ^ d0)
                total ^= e ^ o
        total ^= self._ones(full, convention)
        return total

    def second(self, convention: Convention) -> int:
        full = self.full
        total = 0
        for d0 in _submasks(full):
            rest = full ^ d0
            self.visits += 1
            if rest == 0 or self.res(d0) not in D0_RESIDUES or not self.g(d0):
                continue
            for d1 in _submasks(rest):
                self.visits += 1
                if self.res(d1) in D1_RESIDUES and self.g(d1):
                    e, o = self.F(rest ^ d1)
                    total ^= e ^ o
            total ^= self._ones(rest, convention)
        return total


def _submasks(mask: int):
    """Nonempty submasks of mask."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def partition_sum_parity(
    profile: PrimeProfile,
    constraint: Constraint,
    gparity: Callable[[int], int] | None = None,
) -> int:
    """Parity of the constrained decomposition sum, by subset DP."""
    if len(profile.primes) > MAX_DP_PRIMES:
        raise TooManyPrimes(f"{len(profile.primes)} primes > {MAX_DP_PRIMES}")
    eng = _Engine(profile.primes, gparity or _default_gparity)
    if constraint.shape is Shape.FIRST:
        return eng.first(constraint.convention)
    return eng.second(constraint.convention)


# --- brute-force oracle --------------------------------------------------


def set_partitions(items):
    """Yield every set partition of ``items`` as a list of tuples."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [(first,)] + part
        for i in range(len(part)):
            yield part[:i] + [(first,) + part[i]] + part[i + 1 :]


def _product(block) -> int:
    out = 1
    for p in block:
        out *= p
    return out


def slot_labelings(blocks: list[int], shape: Shape) -> int:
    """Number of admissible (d0[, d1]) designations for a partition given
    by its block products."""
    res = [b % 8 for b in blocks]
    count = 0
    if shape is Shape.FIRST:
        for i in range(len(blocks)):
            if all(r == 1 for j, r in enumerate(res) if j != i):
                count += 1
        return count
    for i, j in itertools.permutations(range(len(blocks)), 2):
        if res[i] not in D0_RESIDUES or res[j] not in (1, 2, 3):
            continue
        if all(r == 1 for m, r in enumerate(res) if m not in (i, j)):
            count += 1
    return count


def brute_force_partition_parity(
    profile: PrimeProfile,
    constraint: Constraint,
    genus: Callable[[int], int] | None = None,
) -> int:
    """Parity of the decomposition sum by explicit enumeration of partitions.

    Uses the class-group genus number directly, never the Redei route.
    """
    if len(profile.primes) > MAX_BRUTE_PRIMES:
        raise TooManyPrimes(f"{len(profile.primes)} primes > {MAX_BRUTE_PRIMES}")
    if not profile.primes:
        return 1 if constraint.shape is Shape.FIRST else 0
    genus = genus or genus_number
    total = 0
    for part in set_partitions(profile.primes):
        blocks = [_product(b) for b in part]
        labels = slot_labelings(blocks, constraint.shape)
        if labels == 0:
            continue
        if constraint.shape is Shape.SECOND:
            res = [b % 8 for b in blocks]
            assert sum(r in D0_RESIDUES for r in res) == 1
            assert sum(r in D1_RESIDUES for r in res) <= 1
        weight = 1 if constraint.convention is Convention.MULTISET else labels
        term = weight
        for b in blocks:
            term *= genus(b)
        total += term
    return total % 2


# --- wrappers by residue class ------------------------------------------


def theorem1_parity(n: int, convention: Convention = Convention.MULTISET) -> int:
    """Parity of the first decomposition sum for n = 1, 2, 3 mod 8 (1 for n = 1)."""
    profile = factor_squarefree(n)
    if n % 8 not in (1, 2, 3):
        raise WrongResidueClass(f"{n} = {n % 8} mod 8; expected 1, 2 or 3")
    return partition_sum_parity(profile, Constraint(Shape.FIRST, convention))


def theorem2_sums(n: int, convention: Convention = Convention.MULTISET) -> ParityResult:
    """Both decomposition-sum parities for n = 5, 6, 7 mod 8."""
    profile = factor_squarefree(n)
    if n % 8 not in (5, 6, 7):
        raise WrongResidueClass(f"{n} = {n % 8} mod 8; expected 5, 6 or 7")
    eng = _Engine(profile.primes, _default_gparity)
    s1 = eng.first(convention)
    s2 = eng.second(convention)
    return ParityResult(s1, s2, eng.visits, convention)


def count_a(profile: PrimeProfile) -> int:
    return sum(1 for p in profile.primes if p % 4 == 3)


def count_b(profile: PrimeProfile) -> int:
    return sum(1 for p in profile.primes if p % 8 in (3, 5))


# residue -> (verdict, A bound, B bound)
COROLLARY_TABLE = {
    1: ("NonCongruent", 2, 2),
    2: ("NonCongruent", 0, 2),
    3: ("NonCongruent", 1, 1),
    5: ("Congruent", 0, 1),
    7: ("Congruent", 1, 0),
}


def corollary_condition(n: int) -> tuple[str, str] | None:
    """The residue/A_r/B_r half of the single-genus criterion, ignoring the
    order-4 hypothesis.  Returns (verdict, trigger) or None."""
    profile = factor_squarefree(n)
    entry = COROLLARY_TABLE.get(n % 8)
    if entry is None:
        return None
    verdict, ra, rb = entry
    if count_a(profile) <= ra:
        return verdict, f"A{ra}"
    if count_b(profile) <= rb:
        return verdict, f"B{rb}"
    return None


def corollary_classify(n: int) -> tuple[str, str] | None:
    """Verdict from a single genus number, when Q(sqrt(-n)) has no class of
    exact order 4; e.g. ``corollary_classify(5) == ("Congruent", "A0")``."""
    cond = corollary_condition(n)
    if cond is None or not genus_parity_redei(n):
        return None
    return cond
