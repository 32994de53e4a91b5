# How large can the dual family get?
#
# For a subfamily Y of maximal feasible vectors, the interesting count is
# |I(Y) ∩ I(F)|: how many minimal infeasible vectors are still hidden. The
# bounds below depend only on |Y| and the shape of the constraints.

import random

from monodual import InequalitySystem, IntBox, LinearIneq, PsdIneq, SocIneq
from monodual.bounds import distinct_weight_orders, cell_bound, format_reports, verify_bounds

rng = random.Random(7)

systems = {
    "linear": InequalitySystem(IntBox((3, 3, 3)), [LinearIneq((2, 3, 1), 7), LinearIneq((1, 1, 4), 8)]),
    "soc": InequalitySystem(IntBox((2, 2, 2)), [SocIneq([[1, 2, 0], [0, 1, 1]], [1, 0, 1], 5)]),
    "psd": InequalitySystem(IntBox((2, 2)), [PsdIneq([[[1, 0], [0, 0]], [[1, 1], [1, 1]]], [[3, 1], [1, 2]])]),
}

for name, system in systems.items():
    print(f"--- {name}")
    print(format_reports(verify_bounds(system, trials=3, rng=rng)))

# The SOC and PSD arguments go through counting how many ways the weight
# vectors can be sorted. Sampling gives a lower estimate; the cell count is
# the ceiling.
for name in ("soc", "psd"):
    con = systems[name].constraints[0]
    count, _ = distinct_weight_orders(con, 20_000)
    print(f"{name}: {count} orders seen, at most {cell_bound(con)}")
