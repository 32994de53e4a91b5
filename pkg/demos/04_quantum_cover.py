# Covers of a quantum hypergraph.
#
# Each "edge" is an operator 0 <= A_j <= I. A subset covers if its operators
# add up to at least the identity. Maximal non-covers are maximal feasible
# vectors of a linear matrix inequality, so the whole machinery applies.

from fractions import Fraction

from monodual.applications import build_quantum_cover, decode_cover, is_cover
from monodual.generation import generate_families

half = Fraction(1, 2)
ops = [
    [[1, 0], [0, 0]],
    [[0, 0], [0, 1]],
    [[half, half], [half, half]],
    [[half, -half], [-half, half]],
    [[1, 0], [0, 1]],
]

system = build_quantum_cover(ops)
F, _ = generate_families(system)
covers = sorted(decode_cover(x) for x in F)
for c in covers:
    print("minimal cover", c, "ok" if is_cover(ops, c) else "??")

# {3, 4} is a cover: the two rank-one projections onto (1,1) and (1,-1)
# add to the identity. {1, 3} is not, even though it has full rank.
print(is_cover(ops, {3, 4}), is_cover(ops, {1, 3}))
