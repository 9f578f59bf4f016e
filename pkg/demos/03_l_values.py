# Central values of L(E_n, s) for E_n: ny^2 = x^3 - x, and how they
# line up with Tunnell's ternary form counts and with the parity sums.
import math

from cnum.analytic import (
    conductor,
    curly_L_rank0,
    functional_equation_defect,
    l_value,
    point_search,
    real_period,
    tunnell_counts,
)
from cnum.parity import theorem1_parity

print("Omega_1 =", real_period(1))
print("Gamma(1/4)^2 / sqrt(2 pi) =", math.gamma(0.25) ** 2 / math.sqrt(2 * math.pi))

# the conductor table passes the functional equation test
for n in (1, 2, 5, 6):
    print(f"n={n}  N={conductor(n)}  defect={functional_equation_defect(n):.1e}")

print(f"{'n':>4} {'A':>3} {'B':>3} {'L(E_n,1)':>12} {'script L':>10} {'sum':>4}")
for n in (1, 2, 3, 10, 11, 17, 19, 34, 41):
    a, b = tunnell_counts(n)
    print(f"{n:4d} {a:3d} {b:3d} {l_value(n):12.8f} {curly_L_rank0(n):10.6f} {theorem1_parity(n):4d}")

# odd root number: look at the derivative and for a point instead
for n in (5, 7, 13):
    print(f"n={n}  L'(E_n,1)={l_value(n, 1):.6f}  point={point_search(n, bound=1000)}")
