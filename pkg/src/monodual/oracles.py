"""Monotone inequality classes, exact feasibility, box derivation and
structural checks (supermodularity, 2-monotonicity, traction, PSD reduction).

Every constraint stores exact :class:`fractions.Fraction` parameters.  A
constraint is interpreted either as ``f(x) <= t`` (``sense="le"``, the
maximal-feasible setting) or ``f(x) >= t`` (``sense="ge"``, the
minimal-feasible setting); the owning :class:`InequalitySystem` fixes the
sense for all its constraints.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import exact
from .exact import as_fraction, dot
from .lattice import DEFAULT_CAPACITY, IntBox, IntVec, join, meet, shift

MAX_FEASIBLE = "max_feasible"
MIN_FEASIBLE = "min_feasible"

#: returned by :func:`traction` for a constant function
INFINITY = math.inf


class UnboundedVariableError(ValueError):
    def __init__(self, j: int):
        super().__init__(f"variable {j} (0-based) is not bounded by any constraint and has no cap")
        self.j = j


class InvalidInputError(ValueError):
    pass


def _frac_vec(v) -> tuple:
    return tuple(as_fraction(e) for e in v)


def _nonneg(name, values):
    for v in values:
        if v < 0:
            raise InvalidInputError(f"{name} must be nonnegative, got {v}")


# ---------------------------------------------------------------------------
# constraint classes


class Constraint:
    """Common interface.  ``value`` is exact for the evaluable classes."""

    kind = "abstract"
    evaluable = True

    @property
    def n(self) -> int:  # pragma: no cover - overridden
        raise NotImplementedError

    def value(self, x: Sequence[int]) -> Fraction:
        raise TypeError(f"{self.kind} constraints have no exact rational value")

    def holds(self, x: Sequence[int], sense: str = "le") -> bool:
        v = self.value(x)
        return v <= self.t if sense == "le" else v >= self.t

    def value_ge(self, x: Sequence[int], y: Sequence[int]) -> bool:
        """Exact test of ``f(x) >= f(y)``."""
        return self.value(x) >= self.value(y)

    def cap(self, j: int, sense: str = "le") -> int | None:
        """Bound on ``x_j`` implied by this constraint alone, if any."""
        return None

    def domain(self, j: int) -> int | None:
        """Largest tabulated value of ``x_j`` for table-backed classes."""
        return None

    def parameters(self) -> Iterable[Fraction]:
        raise NotImplementedError


@dataclass
class LinearIneq(Constraint):
    a: tuple
    t: Fraction
    kind = "linear"

    def __post_init__(self):
        self.a = _frac_vec(self.a)
        self.t = as_fraction(self.t)
        _nonneg("linear coefficients", self.a)

    @property
    def n(self):
        return len(self.a)

    def value(self, x):
        return dot(self.a, x)

    def cap(self, j, sense="le"):
        if sense == "le":
            return max(0, math.floor(self.t / self.a[j])) if self.a[j] > 0 else None
        # a minimal feasible point never needs a_j x_j beyond ceil(t / a_j)
        return max(0, math.ceil(self.t / self.a[j])) if self.a[j] > 0 else 0

    def parameters(self):
        return (*self.a, self.t)


@dataclass
class SeparableIneq(Constraint):
    """``sum_j f_j(x_j) <= t`` with tabulated nondecreasing ``f_j``."""

    tables: tuple
    t: Fraction
    kind = "separable"

    def __post_init__(self):
        self.tables = tuple(_frac_vec(tab) for tab in self.tables)
        self.t = as_fraction(self.t)
        for j, tab in enumerate(self.tables):
            if not tab:
                raise InvalidInputError(f"empty table for variable {j}")
            _nonneg(f"table {j}", tab)
            if any(u > v for u, v in zip(tab, tab[1:])):
                raise InvalidInputError(f"table {j} is not nondecreasing")

    @property
    def n(self):
        return len(self.tables)

    def value(self, x):
        try:
            return sum((tab[xj] for tab, xj in zip(self.tables, x)), Fraction(0))
        except IndexError:
            raise InvalidInputError(f"point {tuple(x)} outside the tabulated domain") from None

    def cap(self, j, sense="le"):
        tab = self.tables[j]
        if sense == "le":
            ok = [x for x, v in enumerate(tab) if v <= self.t]
            return ok[-1] if ok else 0
        # first point where f_j alone reaches t, if any
        hit = [x for x, v in enumerate(tab) if v >= self.t]
        return hit[0] if hit else len(tab) - 1

    def domain(self, j):
        return len(self.tables[j]) - 1

    def parameters(self):
        return (*itertools.chain.from_iterable(self.tables), self.t)


@dataclass
class PolynomialIneq(Constraint):
    """``sum_H a_H prod_{j in H} x_j^{d_Hj} <= t`` with ``a_H > 0``.

    ``terms`` is a sequence of ``(coef, {j: exponent})`` with 0-based ``j``.
    """

    terms: tuple
    t: Fraction
    nvars: int
    kind = "polynomial"

    def __post_init__(self):
        terms = []
        for coef, exps in self.terms:
            coef = as_fraction(coef)
            if coef <= 0:
                raise InvalidInputError(f"term coefficient must be positive, got {coef}")
            exps = {int(j): int(d) for j, d in dict(exps).items()}
            for j, d in exps.items():
                if not 0 <= j < self.nvars:
                    raise InvalidInputError(f"variable index {j} out of range")
                if d < 1:
                    raise InvalidInputError(f"exponent must be >= 1, got {d}")
            terms.append((coef, exps))
        self.terms = tuple(terms)
        self.t = as_fraction(self.t)

    @property
    def n(self):
        return self.nvars

    @property
    def s(self) -> int:
        return len(self.terms)

    @property
    def degree(self) -> int:
        return max((d for _, e in self.terms for d in e.values()), default=0)

    @property
    def p(self) -> int:
        """Largest number of variables in a single term."""
        return max((len(e) for _, e in self.terms), default=0)

    def value(self, x):
        total = Fraction(0)
        for coef, exps in self.terms:
            total += coef * math.prod(x[j] ** d for j, d in exps.items())
        return total

    def cap(self, j, sense="le"):
        coefs = [coef for coef, exps in self.terms if j in exps]
        if not coefs or sense != "le":
            return None
        return max(0, math.floor(self.t / min(coefs)))

    def parameters(self):
        out = [self.t]
        for coef, exps in self.terms:
            out.append(coef)
            out.extend(Fraction(d) for d in exps.values())
        return out


@dataclass
class ProductAffineIneq(Constraint):
    """``prod_k (a^k . x + a0^k)`` compared with ``t`` (usually ``>=``)."""

    factors: tuple  # sequence of (a, a0)
    t: Fraction
    kind = "product_affine"

    def __post_init__(self):
        facs = []
        for a, a0 in self.factors:
            a, a0 = _frac_vec(a), as_fraction(a0)
            _nonneg("factor coefficients", (*a, a0))
            facs.append((a, a0))
        if not facs:
            raise InvalidInputError("a product needs at least one factor")
        if len({len(a) for a, _ in facs}) != 1:
            raise InvalidInputError("factors have different dimensions")
        self.factors = tuple(facs)
        self.t = as_fraction(self.t)

    @property
    def n(self):
        return len(self.factors[0][0])

    @property
    def m(self) -> int:
        return len(self.factors)

    def value(self, x):
        return math.prod((dot(a, x) + a0 for a, a0 in self.factors), start=Fraction(1))

    def cap(self, j, sense="le"):
        if sense == "le":
            return None
        # At a feasible point (t > 0) every factor is positive, hence at least
        # its smallest positive coefficient; a factor containing j is at least
        # a_j (x_j - 1) after lowering x_j.  Minimality of x then forces x_j <= X
        # for the least X with  prod(floor factors) * X^q >= t.
        if self.t <= 0:
            return 0
        base, q = Fraction(1), 0
        for a, a0 in self.factors:
            if a[j] > 0:
                base *= a[j]
                q += 1
            else:
                pos = [v for v in (*a, a0) if v > 0]
                if not pos:
                    return 0
                base *= min(pos)
        if q == 0:
            return 0
        X = max(0, math.floor((self.t / base) ** (1 / q)) - 1)
        while base * X**q < self.t:
            X += 1
        return X

    def parameters(self):
        out = [self.t]
        for a, a0 in self.factors:
            out.extend(a)
            out.append(a0)
        return out


@dataclass
class SupermodularTableIneq(Constraint):
    """``f(x) <= t`` for a fully tabulated monotone supermodular ``f``.

    ``values`` maps every point of the box ``{0..shape_j - 1}`` to a rational.
    Construction validates monotonicity and supermodularity exhaustively.
    """

    values: dict
    t: Fraction
    shape: tuple
    validate: bool = True
    kind = "supermodular_table"

    def __post_init__(self):
        self.values = {tuple(k): as_fraction(v) for k, v in self.values.items()}
        self.t = as_fraction(self.t)
        self.shape = tuple(int(s) for s in self.shape)
        box = IntBox(tuple(s - 1 for s in self.shape))
        missing = [x for x in box.points() if x not in self.values]
        if missing:
            raise InvalidInputError(f"table misses {len(missing)} points, e.g. {missing[0]}")
        if self.validate:
            f = self.values.__getitem__
            if not is_monotone(f, box):
                raise InvalidInputError("table is not monotone nondecreasing")
            if not check_supermodular(f, box):
                raise InvalidInputError("table is not supermodular")

    @classmethod
    def from_nested(cls, nested, t, validate=True):
        """Build from a nested list indexed ``values[x_1][x_2]...``."""
        import numpy as np

        arr = np.array(nested, dtype=object)
        table = {tuple(int(i) for i in idx): arr[idx] for idx in np.ndindex(arr.shape)}
        return cls(table, t, arr.shape, validate)

    def to_nested(self):
        import numpy as np

        arr = np.empty(self.shape, dtype=object)
        for k, v in self.values.items():
            arr[k] = v
        return arr.tolist()

    @property
    def n(self):
        return len(self.shape)

    @property
    def R(self) -> Fraction:
        return self.values[tuple(s - 1 for s in self.shape)]

    def value(self, x):
        return self.values[tuple(x)]

    def domain(self, j):
        return self.shape[j] - 1

    def parameters(self):
        return (*self.values.values(), self.t)


@dataclass
class SocIneq(Constraint):
    """``||A x|| + b.x`` compared with ``t``; ``A`` is ``d x n``, all entries >= 0."""

    A: tuple
    b: tuple
    t: Fraction
    kind = "soc"
    evaluable = False

    def __post_init__(self):
        self.A = tuple(_frac_vec(r) for r in self.A)
        self.b = _frac_vec(self.b)
        self.t = as_fraction(self.t)
        if any(len(r) != len(self.b) for r in self.A):
            raise InvalidInputError("rows of A must have length n = len(b)")
        for r in self.A:
            _nonneg("SOC matrix", r)
        _nonneg("SOC vector", self.b)
        _nonneg("SOC threshold", [self.t])

    @property
    def n(self):
        return len(self.b)

    @property
    def d(self) -> int:
        return len(self.A)

    def norm_sq(self, x) -> Fraction:
        return sum((dot(r, x) ** 2 for r in self.A), Fraction(0))

    def holds(self, x, sense="le"):
        slack = self.t - dot(self.b, x)
        if sense == "le":
            return exact.sqrt_le(self.norm_sq(x), slack)
        return slack <= 0 or self.norm_sq(x) >= slack * slack

    def value_ge(self, x, y):
        # ||Ax|| - ||Ay|| >= b.y - b.x
        return exact.sqrt_diff_ge(self.norm_sq(x), self.norm_sq(y), dot(self.b, y) - dot(self.b, x))

    def float_value(self, x) -> float:
        return math.sqrt(float(self.norm_sq(x))) + float(dot(self.b, x))

    def cap(self, j, sense="le"):
        if sense != "le":
            return None
        m = max([self.b[j]] + [r[j] for r in self.A])
        return max(0, math.floor(self.t / m)) if m > 0 else None

    def parameters(self):
        return (*itertools.chain.from_iterable(self.A), *self.b, self.t)


@dataclass
class PsdIneq(Constraint):
    """``sum_j A^j x_j  <=  T`` in the Loewner order (or ``>=``)."""

    mats: tuple
    T: list
    validate: bool = True
    kind = "psd"
    evaluable = False

    def __post_init__(self):
        self.mats = tuple(exact.as_matrix(M) for M in self.mats)
        self.T = exact.as_matrix(self.T)
        m = len(self.T)
        for M in (*self.mats, self.T):
            if len(M) != m or not exact.is_symmetric(M):
                raise InvalidInputError(f"matrices must be symmetric {m}x{m}")
        if self.validate:
            for j, M in enumerate(self.mats):
                if not exact.is_psd(M):
                    raise InvalidInputError(f"A^{j} is not positive semidefinite")
            if not exact.is_psd(self.T):
                raise InvalidInputError("T is not positive semidefinite")

    @property
    def n(self):
        return len(self.mats)

    @property
    def m(self) -> int:
        return len(self.T)

    def combination(self, x) -> exact.Matrix:
        m = self.m
        S = exact.zeros(m)
        for M, xj in zip(self.mats, x):
            if xj:
                for i in range(m):
                    for k in range(m):
                        S[i][k] += xj * M[i][k]
        return S

    def slack(self, x) -> exact.Matrix:
        return exact.mat_add(self.T, self.combination(x), -1)

    def holds(self, x, sense="le"):
        if sense == "le":
            return exact.is_psd(self.slack(x))
        return exact.is_psd(exact.mat_add(self.combination(x), self.T, -1))

    def cap(self, j, sense="le"):
        if sense != "le":
            return None
        tr = exact.trace(self.mats[j])
        return max(0, math.floor(exact.trace(self.T) / tr)) if tr > 0 else None

    def parameters(self):
        out = []
        for M in (*self.mats, self.T):
            out.extend(itertools.chain.from_iterable(M))
        return out


# ---------------------------------------------------------------------------
# systems


@dataclass
class InequalitySystem:
    """A conjunction of monotone constraints over an integer box.

    ``mode="max_feasible"`` reads every constraint as ``f_i(x) <= t_i``;
    ``mode="min_feasible"`` reads them as ``f_i(x) >= t_i``.
    """

    box: IntBox
    constraints: list
    mode: str = MAX_FEASIBLE

    def __post_init__(self):
        if not isinstance(self.box, IntBox):
            self.box = IntBox(self.box)
        if self.mode not in (MAX_FEASIBLE, MIN_FEASIBLE):
            raise InvalidInputError(f"unknown mode {self.mode!r}")
        self.constraints = list(self.constraints)
        for i, con in enumerate(self.constraints):
            if con.n != self.box.n:
                raise InvalidInputError(
                    f"constraint {i} has dimension {con.n}, box has {self.box.n}"
                )
            if con.kind == "supermodular_table":
                if self.mode != MAX_FEASIBLE:
                    raise InvalidInputError("supermodular tables are only supported in <= form")
                if any(cj >= s for cj, s in zip(self.box.c, con.shape)):
                    raise InvalidInputError("box exceeds the tabulated domain")
            if con.kind == "separable":
                if any(cj >= len(tab) for cj, tab in zip(self.box.c, con.tables)):
                    raise InvalidInputError("box exceeds the tabulated domain")

    @property
    def sense(self) -> str:
        return "le" if self.mode == MAX_FEASIBLE else "ge"

    @property
    def n(self) -> int:
        return self.box.n

    @property
    def r(self) -> int:
        return len(self.constraints)

    def is_feasible(self, x: Sequence[int]) -> bool:
        sense = self.sense
        return all(con.holds(x, sense) for con in self.constraints)

    def kinds(self) -> set:
        return {con.kind for con in self.constraints}

    def encoding_length(self) -> int:
        """Total bit length of all numerators and denominators."""
        return sum(
            exact.bit_length(p) for con in self.constraints for p in con.parameters()
        ) + sum(int(cj).bit_length() + 1 for cj in self.box.c)


def evaluate(constraint: Constraint, x: Sequence[int]) -> Fraction:
    return constraint.value(x)


def is_feasible(system: InequalitySystem, x: Sequence[int]) -> bool:
    return system.is_feasible(x)


def derive_box(constraints: Sequence[Constraint], n: int | None = None, *,
               sense: str = "le", caps: Sequence[int | None] | None = None) -> IntBox:
    """Per-variable box bound from the constraints and optional user caps.

    For ``<=`` constraints each class bounds feasible points and the smallest
    bound wins.  For ``>=`` constraints a class may only say how far a
    *minimal* feasible point can reach in ``x_j``; the largest such reach is
    used and every constraint must provide one.  Tabulated domains always
    cap.  A user cap takes precedence over derived ``>=`` reaches.

    Raises :class:`UnboundedVariableError` when nothing bounds ``x_j``.
    """
    if n is None:
        n = constraints[0].n
    c = []
    for j in range(n):
        user = None if caps is None else caps[j]
        domain = [con.domain(j) for con in constraints]
        domain = [v for v in domain if v is not None]
        if sense == "le":
            cands = [v for v in (con.cap(j, "le") for con in constraints) if v is not None]
            cands += domain
            if user is not None:
                cands.append(int(user))
            if not cands:
                raise UnboundedVariableError(j)
            c.append(min(cands))
        else:
            if user is not None:
                bound = int(user)
            else:
                reach = [con.cap(j, "ge") for con in constraints]
                if not reach or any(v is None for v in reach):
                    if not domain:
                        raise UnboundedVariableError(j)
                    reach = []
                bound = max(reach) if reach else min(domain)
            c.append(min([bound] + domain))
    return IntBox(tuple(c))


def make_system(constraints, c="auto", mode=MAX_FEASIBLE, caps=None) -> InequalitySystem:
    constraints = list(constraints)
    sense = "le" if mode == MAX_FEASIBLE else "ge"
    if c == "auto" or c is None:
        box = derive_box(constraints, sense=sense, caps=caps)
    else:
        box = IntBox(tuple(c))
    return InequalitySystem(box, constraints, mode)


# ---------------------------------------------------------------------------
# structural checks on tabulated / evaluable functions


def _oracle_fn(oracle) -> Callable:
    if isinstance(oracle, Constraint):
        return oracle.value
    if isinstance(oracle, dict):
        return lambda x: oracle[tuple(x)]
    return oracle


def is_monotone(oracle, box: IntBox, limit: int | None = None, tol=0) -> bool:
    f = _oracle_fn(oracle)
    box.check_capacity(limit)
    for x in box.points():
        fx = f(x)
        for j in range(box.n):
            if x[j] < box.c[j] and f(shift(x, j, 1)) < fx - tol:
                return False
    return True


def check_supermodular(oracle, box: IntBox, limit: int | None = None, tol=0) -> bool:
    """Unit-difference characterisation: ``f(x + 1^j) - f(x)`` must be
    nondecreasing in every other coordinate.

    Comparing each point with its unit successors suffices, since
    monotonicity along each coordinate chains to every comparable pair.
    """
    f = _oracle_fn(oracle)
    box.check_capacity(limit)
    n, c = box.n, box.c
    vals = {x: f(x) for x in box.points()}
    for x in box.points():
        for j in range(n):
            if x[j] == c[j]:
                continue
            xj = shift(x, j, 1)
            diff = vals[xj] - vals[x]
            for k in range(n):
                if k == j or x[k] == c[k]:
                    continue
                y, yj = shift(x, k, 1), shift(xj, k, 1)
                if vals[yj] - vals[y] < diff - tol:
                    return False
    return True


def check_supermodular_pairs(oracle, box: IntBox, limit: int | None = None) -> bool:
    """Direct test of ``f(x v y) + f(x ^ y) >= f(x) + f(y)`` over all pairs."""
    f = _oracle_fn(oracle)
    box.check_capacity(limit)
    pts = list(box.points())
    vals = {x: f(x) for x in pts}
    return all(
        vals[join(x, y)] + vals[meet(x, y)] >= vals[x] + vals[y]
        for i, x in enumerate(pts) for y in pts[i + 1:]
    )


def _ge_fn(oracle) -> Callable:
    if isinstance(oracle, Constraint):
        return oracle.value_ge
    f = _oracle_fn(oracle)
    return lambda x, y: f(x) >= f(y)


def check_2monotonic(oracle, box: IntBox, sigma: Sequence[int],
                     limit: int | None = None) -> bool:
    """Swap test: moving one unit from ``sigma[j]`` to an earlier
    ``sigma[k]`` (``k < j``) never decreases ``f``.  ``sigma`` is 0-based.
    """
    ge = _ge_fn(oracle)
    box.check_capacity(limit)
    n, c = box.n, box.c
    if sorted(sigma) != list(range(n)):
        raise InvalidInputError(f"{sigma} is not a permutation of range({n})")
    for x in box.points():
        for k in range(n):
            sk = sigma[k]
            if x[sk] >= c[sk]:
                continue
            for j in range(k + 1, n):
                sj = sigma[j]
                if x[sj] == 0:
                    continue
                moved = shift(shift(x, sk, 1), sj, -1)
                if not ge(moved, x):
                    return False
    return True


def traction(oracle, box: IntBox, limit: int | None = None):
    """Smallest strictly positive unit-step increase of ``f`` (``math.inf`` if none)."""
    f = _oracle_fn(oracle)
    box.check_capacity(limit)
    vals = {x: f(x) for x in box.points()}
    best = None
    for x, fx in vals.items():
        for j in range(box.n):
            if x[j] < box.c[j]:
                step = vals[shift(x, j, 1)] - fx
                if step > 0 and (best is None or step < best):
                    best = step
    return INFINITY if best is None else best


def product_affine_log_transform(ineq: "ProductAffineIneq", box: IntBox):
    """Floating diagnostic turning ``prod_k p_k(y) >= t`` into a ``<=``
    inequality of a monotone supermodular function of ``x = c - y``.

    Returns ``(table, t_prime, eps)`` with
    ``f(x) = R - sum_k log(p_k(c - x) + eps)``, ``R = sum_k log(p_k(c) + eps)``,
    ``t' = R - log t`` and ``eps = 1 / (2m (1 + max_k p_k(c))^(m-1))``.
    For integer data the maximal feasible points of ``f <= t'`` are the
    reflections of the minimal feasible points of the product inequality.
    Not used by the enumeration itself.
    """
    m = ineq.m
    c = box.c
    top = max(float(dot(a, c) + a0) for a, a0 in ineq.factors)
    eps = 1.0 / (2 * m * (1 + top) ** (m - 1))

    def logsum(y):
        return sum(math.log(float(dot(a, y) + a0) + eps) for a, a0 in ineq.factors)

    R = logsum(c)
    table = {x: R - logsum(box.reflect(x)) for x in box.points()}
    t_prime = R - math.log(float(ineq.t)) if ineq.t > 0 else math.inf
    return table, t_prime, eps


def soc_weight_vector(ineq: SocIneq, u: Sequence) -> tuple:
    """``A^T u + b`` for ``u`` in the nonnegative unit ball."""
    u = _frac_vec(u)
    if len(u) != ineq.d:
        raise InvalidInputError(f"u must have length {ineq.d}")
    if any(v < 0 for v in u) or sum(v * v for v in u) > 1:
        raise ValueError("u must lie in the nonnegative unit ball")
    return tuple(
        sum((ineq.A[k][j] * u[k] for k in range(ineq.d)), Fraction(0)) + ineq.b[j]
        for j in range(ineq.n)
    )


# ---------------------------------------------------------------------------
# PSD rank reduction


@dataclass
class PsdReduction:
    """Equivalent reduced form of a PSD inequality.

    ``sum_{j in kept} C[j] x_j <= rhs`` with ``rhs`` the identity when the
    pivots of ``T`` are rational squares and a positive diagonal otherwise.
    Variables in ``dropped`` are forced to zero.
    """

    kept: list
    dropped: list
    C: dict
    rhs: exact.Matrix
    U: exact.Matrix
    rank: int
    perm: list = field(default_factory=list)

    @property
    def normalized(self) -> bool:
        return self.rhs == exact.identity(self.rank)

    def as_ineq(self) -> PsdIneq:
        return PsdIneq([self.C[j] for j in self.kept], self.rhs)

    def project(self, x: Sequence[int]) -> tuple:
        return tuple(x[j] for j in self.kept)


def psd_reduce(ineq: PsdIneq) -> PsdReduction:
    """Congruence ``U T U^T = diag(D_d, 0)`` by exact pivoted LDL^T, then
    ``B^j = U A^j U^T``; variables with a positive diagonal entry of ``B^j``
    outside the leading ``d x d`` block are dropped, the rest keep that block.
    """
    res = exact.ldl_pivoted(ineq.T)
    if not res.psd:
        raise InvalidInputError("T is not positive semidefinite")
    m, d = ineq.m, res.rank
    P = [[Fraction(int(res.perm[i] == k)) for k in range(m)] for i in range(m)]
    U = exact.mat_mul(exact.lower_inverse(res.L), P)
    roots = [exact.rational_sqrt(p) for p in res.D[:d]]
    if all(r is not None for r in roots):
        for i, r in enumerate(roots):
            U[i] = [v / r for v in U[i]]
        rhs = exact.identity(d)
    else:
        rhs = exact.diag(res.D[:d])
    Ut = exact.transpose(U)
    kept, dropped, C = [], [], {}
    for j, A in enumerate(ineq.mats):
        B = exact.mat_mul(exact.mat_mul(U, A), Ut)
        if any(B[k][k] != 0 for k in range(d, m)):
            dropped.append(j)
        else:
            kept.append(j)
            C[j] = [row[:d] for row in B[:d]]
    return PsdReduction(kept, dropped, C, rhs, U, d, res.perm)


def float_margin_psd(M) -> float:
    import numpy as np

    return float(np.linalg.eigvalsh(np.array(M, dtype=float)).min())
