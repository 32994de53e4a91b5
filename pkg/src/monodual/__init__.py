"""Joint generation of maximal feasible and minimal infeasible integer vectors
for monotone inequality systems, with exact oracles and dual-bound checks."""

from .applications import (
    ChanceCoverSpec,
    ChanceKnapsackSpec,
    QuantumCoverSpec,
    build_chance_cover,
    build_chance_knapsack,
    build_nash_welfare,
    build_quantum_cover,
    build_transversal,
    decode_cover,
    inv_norm_cdf,
)
from .bounds import (
    BoundReport,
    bound_value,
    distinct_weight_orders,
    empirical_dual_intersection,
    intersection_lemma_check,
    mobius_transform,
    phi_cells,
    psi_cells,
    verify_bounds,
)
from .brute import brute_minimal_feasible_ge, enumerate_all
from .dualization import brute_IA, dual_step, is_in_IA
from .generation import gen_step, generate_families, joint_generate, reflect
from .lattice import Antichain, CapacityError, DimensionError, IntBox
from .oracles import (
    MAX_FEASIBLE,
    MIN_FEASIBLE,
    InequalitySystem,
    InvalidInputError,
    LinearIneq,
    PolynomialIneq,
    ProductAffineIneq,
    PsdIneq,
    SeparableIneq,
    SocIneq,
    SupermodularTableIneq,
    UnboundedVariableError,
    check_2monotonic,
    check_supermodular,
    derive_box,
    make_system,
    psd_reduce,
    traction,
)

__version__ = "0.1.0"
