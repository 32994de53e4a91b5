# Minimal transversals of a hypergraph as minimal feasible vectors.
#
# A vertex set hits every edge exactly when the product over edges of
# "how many chosen vertices lie in this edge" is at least one.

from monodual.applications import build_transversal, transversal_sets
from monodual.generation import JointGenerator

edges = [{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}]  # the 5-cycle
system = build_transversal(edges)

gen = JointGenerator(system)
found = []
for tag, v in gen:
    if tag == "MIN_FEAS":
        found.append(v)

print("minimal transversals of C5:")
for s in transversal_sets(found):
    print("  ", s)

# The other family, maximal vertex sets missing some edge, comes out of the
# same run for free.
print("oracle calls:", gen.state.oracle_calls, " dualization rounds:", gen.state.dual_steps)
