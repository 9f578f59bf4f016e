# Class groups of Q(sqrt(-d)) from reduced binary quadratic forms,
# and the parity of the genus number g(d) = #(2Cl) read off a GF(2) matrix.
import numpy as np

from cnum.classgroup import class_group, compose, genus_parity_redei, redei_matrix, reduced_forms

# d = 14 gives D = -56 and a cyclic group of order 4
cg = class_group(14)
print("D =", cg.D, " h =", cg.h, " structure =", cg.elementary_divisors)
for f in cg.forms:
    print("  ", f)

# composition is the group law; the square of (3, 2, 5) is not principal
f = reduced_forms(-56)[2]
print(f, "*", f, "=", compose(f, f))

# genus theory: h = g * 2^h2, where h2 + 1 counts the primes dividing D
for d in (5, 21, 105, 1155):
    cg = class_group(d)
    print(f"d={d:5d}  h={cg.h:3d}  h2={cg.h2}  g={cg.g}")

# the parity of g only needs a matrix of Kronecker symbols
m = redei_matrix(105)
print("primes dividing D:", m.primes)
print(np.array(m.entries))
print("rank", m.rank, " 4-rank", m.four_rank, " g mod 2 =", genus_parity_redei(105))

# count how often g(d) is odd among square-free d <= 2000
ds = [d for d in range(1, 2001) if all(d % (p * p) for p in range(2, 45))]
odd = sum(genus_parity_redei(d) for d in ds)
print(f"{odd} of {len(ds)} square-free d <= 2000 have odd g(d)")
