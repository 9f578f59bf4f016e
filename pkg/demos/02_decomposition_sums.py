# Mod-2 sums over factorizations of n into blocks with mod-8 residue
# constraints, weighted by products of genus numbers.
import math

from cnum.arith import factor_squarefree, is_squarefree
from cnum.classgroup import genus_number
from cnum.parity import (
    SECOND_SUM,
    THEOREM1,
    brute_force_partition_parity,
    partition_sum_parity,
    set_partitions,
    theorem1_parity,
    theorem2_sums,
)

n = 3 * 11 * 17
prof = factor_squarefree(n)
print(f"n = {n} = {prof.primes}, n mod 8 = {n % 8}")

# spell out the admissible partitions: at most one block not = 1 mod 8
for blocks in set_partitions(prof.primes):
    ds = [math.prod(b) for b in blocks]
    if sum(d % 8 != 1 for d in ds) <= 1:
        gs = [genus_number(d) for d in ds]
        print("  ", ds, "g:", gs)

print("subset DP:", partition_sum_parity(prof, THEOREM1),
      " brute force:", brute_force_partition_parity(prof, THEOREM1))

# n = 1, 2, 3 mod 8: an odd sum means L(E_n, 1) != 0
print("odd first sums for n < 60:",
      [k for k in range(1, 60) if k % 8 in (1, 2, 3) and is_squarefree(k) and theorem1_parity(k)])

# n = 5, 6, 7 mod 8 has two sums
for k in (5, 21, 6, 14, 15, 39):
    res = theorem2_sums(k)
    print(f"n={k:3d}  s1={res.s1}  s2={res.s2}")

# the DP handles many primes where enumeration would not
big = factor_squarefree(2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29 * 31)
print("11 primes:", partition_sum_parity(big, SECOND_SUM))
