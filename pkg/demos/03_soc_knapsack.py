# Chance-constrained knapsack with independent normal weights.
#
# Item j weighs a_j on average with standard deviation d_j. We want
# P(total weight <= t) >= alpha, which for normal weights reads
#   a^T x + Phi^{-1}(alpha) * ||D x|| <= t.

from fractions import Fraction

from monodual.applications import ChanceKnapsackSpec, build_chance_knapsack, inv_norm_cdf
from monodual.bounds import two_monotonic_permutation, verify_bounds, format_reports
from monodual.generation import generate_families

a = [6, 5, 4, 3, 2]
d = [3, 3, 2, 1, 1]
D = [[dj if k == j else 0 for j, dj in enumerate(d)] for k in range(len(d))]

for alpha in (Fraction(1, 2), Fraction(9, 10), Fraction(99, 100)):
    system = build_chance_knapsack(ChanceKnapsackSpec([a], [D], [alpha], [12]))
    F, I = generate_families(system)
    print(f"alpha={alpha}  quantile={float(inv_norm_cdf(alpha)):.4f}  "
          f"|F|={len(F)}  |I(F)|={len(I)}")

# Means and deviations sorted the same way make the constraint 2-monotonic:
# swapping a heavier item for a lighter one never hurts.
print("sorting permutation:", two_monotonic_permutation(system.constraints[0], system.box))

print(format_reports(verify_bounds(system, trials=4)))
