"""Builders that turn application problems into inequality systems.

* hypergraph transversals as a product of affine sums ``>= 1``;
* Nash social welfare allocations;
* chance-constrained knapsacks with Gaussian weights (second-order cone);
* chance-constrained covering with independent Gaussian weights
  (tabulated supermodular function);
* quantum hypergraph covers (positive semidefinite inequality).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from . import exact
from .lattice import IntBox
from .oracles import (
    MAX_FEASIBLE,
    MIN_FEASIBLE,
    InequalitySystem,
    InvalidInputError,
    LinearIneq,
    ProductAffineIneq,
    PsdIneq,
    SocIneq,
    SupermodularTableIneq,
    check_supermodular,
    is_monotone,
    traction,
)

# ---------------------------------------------------------------------------
# Gaussian quantile

# Acklam's rational approximation (relative error about 1.2e-9)
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549671010229528e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _acklam(p: float) -> float:
    if p < _P_LOW:
        q = math.sqrt(-2 * math.log(p))
        num = ((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]
        return num / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1)
    if p > 1 - _P_LOW:
        return -_acklam(1 - p)
    q = p - 0.5
    r = q * q
    num = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q
    return num / (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1)


def inv_norm_cdf(p, digits: int = 12) -> Fraction:
    """Rational approximation of the standard normal quantile.

    A closed-form rational approximation gives a starting point, which is
    polished by Newton steps against a 40-digit evaluation of the CDF and
    rounded to ``digits`` decimals (absolute error well below 1e-8).
    """
    p = exact.as_fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    if p == Fraction(1, 2):
        return Fraction(0)
    with mpmath.workdps(40):
        pm = mpmath.mpf(p.numerator) / p.denominator
        x = mpmath.mpf(_acklam(float(p)))
        for _ in range(50):
            step = (mpmath.ncdf(x) - pm) / mpmath.npdf(x)
            x -= step
            if abs(step) < mpmath.mpf(10) ** (-(digits + 6)):
                break
        scaled = int(mpmath.nint(x * 10**digits))
    return Fraction(scaled, 10**digits)


def _sqrt_fraction(q: Fraction, dps: int = 50) -> Fraction:
    """Exact root when rational, else a ``dps``-digit rational snapshot."""
    root = exact.rational_sqrt(q)
    if root is not None:
        return root
    with mpmath.workdps(dps):
        s = mpmath.sqrt(mpmath.mpf(q.numerator) / q.denominator)
        man, exp = s.man, s.exp
    return Fraction(int(man)) * (Fraction(2) ** exp)


def _frac_list(v, name) -> tuple:
    try:
        return tuple(exact.as_fraction(x) for x in v)
    except (TypeError, ValueError) as err:
        raise InvalidInputError(f"{name}: {err}") from None


# ---------------------------------------------------------------------------
# transversals and Nash welfare


def build_transversal(edges: Sequence[Sequence[int]], n: int | None = None) -> InequalitySystem:
    """``prod_{E in H} sum_{i in E} x_i >= 1`` over ``{0,1}^n``; vertices are 1-based."""
    edges = [tuple(e) for e in edges]
    if not edges:
        raise InvalidInputError("hypergraph has no edges")
    if any(len(e) == 0 for e in edges):
        raise InvalidInputError("empty edge: no transversal exists")
    top = max(max(e) for e in edges)
    n = top if n is None else n
    if min(min(e) for e in edges) < 1 or top > n:
        raise InvalidInputError(f"vertices must lie in 1..{n}")
    factors = [([1 if (j + 1) in set(e) else 0 for j in range(n)], 0) for e in edges]
    return InequalitySystem(IntBox((1,) * n), [ProductAffineIneq(factors, 1)], MIN_FEASIBLE)


def transversal_sets(vectors) -> list:
    """0/1 vectors as sorted 1-based vertex sets."""
    return sorted(tuple(j + 1 for j, v in enumerate(x) if v) for x in vectors)


def build_nash_welfare(utilities, demands, t, caps) -> InequalitySystem:
    """Allocations with geometric-mean utility ``>= t`` and ``u_i(x) >= demands_i``.

    ``utilities`` is an ``m x n`` matrix of linear utility coefficients; the
    root is cleared by raising the threshold to ``t^m``.
    """
    U = [_frac_list(row, "utilities") for row in utilities]
    if not U:
        raise InvalidInputError("need at least one agent")
    n = len(U[0])
    if any(len(row) != n for row in U) or any(v < 0 for row in U for v in row):
        raise InvalidInputError("utilities must be a nonnegative m x n matrix")
    demands = _frac_list(demands, "demands")
    if len(demands) != len(U):
        raise InvalidInputError("one demand per agent is required")
    if caps is None:
        raise InvalidInputError("Nash welfare needs finite caps")
    caps = tuple(int(v) for v in caps)
    if len(caps) != n or any(v < 0 for v in caps):
        raise InvalidInputError(f"caps must be {n} nonnegative integers")
    t = exact.as_fraction(t)
    if t < 0:
        raise InvalidInputError("t must be nonnegative")
    cons = [ProductAffineIneq([(row, 0) for row in U], t ** len(U))]
    cons += [LinearIneq(row, ti) for row, ti in zip(U, demands)]
    return InequalitySystem(IntBox(caps), cons, MIN_FEASIBLE)


# ---------------------------------------------------------------------------
# chance constraints


@dataclass
class ChanceKnapsackSpec:
    """Per constraint: mean vector, factor matrix (covariance ``A^T A``),
    reliability in ``[1/2, 1)`` and capacity."""

    means: list
    factors: list
    alphas: list
    t: list


@dataclass
class ChanceCoverSpec:
    """Per constraint: mean vector, standard deviations (independent
    weights), reliability in ``(0, 1/2]`` and demand."""

    means: list
    deviations: list
    alphas: list
    t: list


def _check_lengths(spec, fields):
    sizes = {f: len(getattr(spec, f)) for f in fields}
    if len(set(sizes.values())) != 1 or not sizes[fields[0]]:
        raise InvalidInputError(f"need one entry per constraint in each of {', '.join(fields)}")


def build_chance_knapsack(spec: ChanceKnapsackSpec) -> InequalitySystem:
    """``a^T x + q ||A x|| <= t`` with ``q`` the quantile of ``alpha``."""
    _check_lengths(spec, ("means", "factors", "alphas", "t"))
    cons = []
    n = None
    for a, A, alpha, t in zip(spec.means, spec.factors, spec.alphas, spec.t):
        alpha = exact.as_fraction(alpha)
        if alpha < Fraction(1, 2) or alpha >= 1:
            raise InvalidInputError("reliability must lie in [1/2, 1)")
        a = _frac_list(a, "means")
        n = len(a) if n is None else n
        if len(a) != n:
            raise InvalidInputError("all mean vectors need the same length")
        q = inv_norm_cdf(alpha)
        A = [[q * exact.as_fraction(v) for v in row] for row in A]
        cons.append(SocIneq(A, a, t))
    return InequalitySystem(IntBox((1,) * n), cons, MAX_FEASIBLE)


@dataclass
class TractionReport:
    analytic: list
    measured: list

    @property
    def consistent(self) -> bool:
        return all(m >= a for m, a in zip(self.measured, self.analytic))


@dataclass
class ChanceCover:
    """Supermodular ``<=`` system in ``x = 1 - y``; covers ``y`` are recovered
    by :meth:`decode`."""

    system: InequalitySystem
    traction: TractionReport
    quantiles: list

    @staticmethod
    def decode(x) -> tuple:
        return tuple(1 - v for v in x)


def build_chance_cover(spec: ChanceCoverSpec, *, dps: int = 50) -> ChanceCover:
    """Tabulate ``f_i(x) = R_i - a^T(1-x) - q ||D(1-x)||`` on ``{0,1}^n``.

    ``y = 1 - x`` satisfies the covering constraint iff ``f_i(x) <= R_i - t_i``
    with ``R_i = f_i``'s value at the all-ones vector.  Square roots are
    frozen to ``dps``-digit rationals; monotonicity and supermodularity of
    each table are checked exactly afterwards.
    """
    _check_lengths(spec, ("means", "deviations", "alphas", "t"))
    cons, analytic, measured, quantiles = [], [], [], []
    n = None
    for a, dev, alpha, t in zip(spec.means, spec.deviations, spec.alphas, spec.t):
        alpha = exact.as_fraction(alpha)
        if alpha <= 0 or alpha > Fraction(1, 2):
            raise InvalidInputError("reliability must lie in (0, 1/2]")
        a = _frac_list(a, "means")
        if any(isinstance(v, (list, tuple)) for v in dev):
            raise InvalidInputError("only diagonal covariance is supported")
        dev = _frac_list(dev, "deviations")
        n = len(a) if n is None else n
        if len(a) != n or len(dev) != n:
            raise InvalidInputError("means and deviations need the same length")
        if any(v < 0 for v in a) or any(v <= 0 for v in dev):
            raise InvalidInputError("means must be nonnegative, deviations positive")
        q = inv_norm_cdf(1 - alpha)
        quantiles.append(q)
        box = IntBox((1,) * n)
        roots = {}

        def g(y):
            K = sum((d * d for d, v in zip(dev, y) if v), Fraction(0))
            if K not in roots:
                roots[K] = _sqrt_fraction(K, dps)
            return exact.dot(a, y) + q * roots[K]

        R = g((1,) * n)
        values = {x: R - g(tuple(1 - v for v in x)) for x in box.points()}
        con = SupermodularTableIneq(values, R - exact.as_fraction(t), (2,) * n)
        cons.append(con)
        d_min, d_max = min(dev), max(dev)
        bound = min(min(a), q * d_min**2 / (2 * _sqrt_fraction(Fraction(n), dps) * d_max))
        analytic.append(bound)
        measured.append(traction(con, box))
    system = InequalitySystem(IntBox((1,) * n), cons, MAX_FEASIBLE)
    return ChanceCover(system, TractionReport(analytic, measured), quantiles)


def verify_cover_table(con: SupermodularTableIneq) -> bool:
    box = IntBox(tuple(s - 1 for s in con.shape))
    return is_monotone(con, box) and check_supermodular(con, box)


# ---------------------------------------------------------------------------
# quantum hypergraph covers


@dataclass
class QuantumCoverSpec:
    operators: list


def build_quantum_cover(spec: QuantumCoverSpec | Sequence) -> InequalitySystem:
    """``sum_j A_j x_j <= T`` over ``{0,1}^n`` with ``T = sum_j A_j - I``.

    ``x`` is feasible iff the complement ``{j : x_j = 0}`` is a cover, i.e.
    its operators sum to at least the identity.
    """
    ops = spec.operators if isinstance(spec, QuantumCoverSpec) else list(spec)
    if not ops:
        raise InvalidInputError("need at least one operator")
    mats = [exact.as_matrix(A) for A in ops]
    d = len(mats[0])
    I = exact.identity(d)
    for j, A in enumerate(mats, 1):
        if len(A) != d or not exact.is_symmetric(A):
            raise InvalidInputError(f"operator {j} is not a symmetric {d}x{d} matrix")
        if not exact.is_psd(A) or not exact.is_psd(exact.mat_add(I, A, -1)):
            raise InvalidInputError(f"operator {j} must satisfy 0 <= A <= I")
    total = exact.zeros(d)
    for A in mats:
        total = exact.mat_add(total, A)
    T = exact.mat_add(total, I, -1)
    if not exact.is_psd(T):
        raise InvalidInputError("hypergraph has no cover")
    return InequalitySystem(IntBox((1,) * len(mats)), [PsdIneq(mats, T)], MAX_FEASIBLE)


def decode_cover(x) -> tuple:
    """1-based cover ``{j : x_j = 0}`` for a maximal feasible ``x``."""
    return tuple(j + 1 for j, v in enumerate(x) if v == 0)


def is_cover(operators, subset) -> bool:
    """Exact test ``sum_{j in subset} A_j >= I`` (1-based subset)."""
    mats = [exact.as_matrix(A) for A in operators]
    d = len(mats[0])
    total = exact.zeros(d)
    for j in subset:
        total = exact.mat_add(total, mats[j - 1])
    return exact.is_psd(exact.mat_add(total, exact.identity(d), -1))
