# A first look: the smallest interesting monotone system.
#
# x1 * x2 <= 1 over the nonnegative integers. Neither variable is capped by
# hand; the box is derived from the inequality itself (each x_j can be at
# most t divided by the smallest coefficient).

from monodual import InequalitySystem, IntBox, PolynomialIneq
from monodual.oracles import derive_box
from monodual.brute import enumerate_all
from monodual.generation import joint_generate

con = PolynomialIneq([(1, {0: 1, 1: 1})], 1, 2)
box = derive_box([con])
print("derived box:", box.c)

system = InequalitySystem(box, [con])

# Joint generation streams maximal feasible vectors and minimal infeasible
# ones as it finds them. Here the box is {0,1}^2 and (1,1) is feasible, so
# nothing is infeasible at all.
for tag, v in joint_generate(system):
    print(tag, v)

# The same answer from a full scan of the box.
print("brute force:", enumerate_all(system))

# Enlarge the box by hand and the infeasible side shows up.
wide = InequalitySystem(IntBox((3, 3)), [con])
for tag, v in sorted(joint_generate(wide)):
    print(tag, v)
