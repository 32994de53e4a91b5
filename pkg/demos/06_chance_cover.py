# Covering with uncertain contributions.
#
# We need aggregate coverage of at least t with probability 1 - alpha. With
# alpha <= 1/2 the square-root term has a negative sign and the constraint is
# no longer linear or convex in the usual direction. Substituting x = 1 - y
# turns it into a monotone supermodular inequality, which is tabulated on
# {0,1}^n with square roots frozen to 50 digits.

from fractions import Fraction

from monodual.applications import ChanceCoverSpec, build_chance_cover
from monodual.generation import generate_families
from monodual.oracles import check_supermodular

means = [[4, 3, 3, 2, 1]]
devs = [[2, 2, 1, 1, 1]]

for alpha in (Fraction(1, 2), Fraction(1, 5), Fraction(1, 20)):
    cover = build_chance_cover(ChanceCoverSpec(means, devs, [alpha], [7]))
    con = cover.system.constraints[0]
    F, _ = generate_families(cover.system)
    sets = sorted(tuple(j + 1 for j, v in enumerate(cover.decode(x)) if v) for x in F)
    print(f"alpha={alpha}: {len(sets)} minimal covers, supermodular={check_supermodular(con, cover.system.box)}")
    for s in sets:
        print("   ", s)
    print("    traction measured", float(cover.traction.measured[0]),
          ">= analytic", round(float(cover.traction.analytic[0]), 4))
