"""Dual-boundedness: Möbius coefficients, arrangement cell counts, the
concrete bounds on ``|I(Y) ∩ I(F)|`` for each inequality class, and an
empirical verifier that measures that quantity by brute force.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import exact
from .brute import enumerate_all
from .dualization import brute_IA
from .generation import as_down_closed
from .lattice import IntBox, IntVec, unit
from .oracles import (
    MIN_FEASIBLE,
    INFINITY,
    InequalitySystem,
    InvalidInputError,
    LinearIneq,
    PsdIneq,
    SeparableIneq,
    SocIneq,
    check_2monotonic,
    psd_reduce,
    traction,
)

# ---------------------------------------------------------------------------
# Möbius transform on a box


@dataclass
class MobiusTable:
    box: IntBox
    coeffs: dict

    def reconstruct(self) -> dict:
        """Downward sums ``sum_{y <= x} fhat(y)`` for every ``x``."""
        arr = _to_array(self.coeffs, self.box)
        for axis in range(arr.ndim):
            arr = np.cumsum(arr, axis=axis)
        return _from_array(arr)


def _to_array(table, box: IntBox) -> np.ndarray:
    arr = np.empty(tuple(cj + 1 for cj in box.c), dtype=object)
    for x in box.points():
        arr[x] = table(x) if callable(table) else table[x]
    return arr


def _from_array(arr: np.ndarray) -> dict:
    return {tuple(int(i) for i in idx): arr[idx] for idx in np.ndindex(arr.shape)}


def mobius_transform(f, box: IntBox, limit: int | None = None) -> MobiusTable:
    """``fhat(y) = sum_{S ⊆ supp} (-1)^|S| f(y - 1^S)``, computed as a
    backward difference along each axis in turn."""
    box.check_capacity(limit)
    if isinstance(f, dict):
        f = f.__getitem__
    arr = _to_array(f, box)
    for axis in range(arr.ndim):
        arr = np.diff(arr, axis=axis, prepend=0)
    return MobiusTable(box, _from_array(arr))


# ---------------------------------------------------------------------------
# arrangement cell counts


def phi_cells(d: int, m: int) -> int:
    """Maximum number of cells cut out by ``m`` hyperplanes in ``R^d``."""
    if d < 0 or m < 0:
        raise ValueError("d and m must be nonnegative")
    return sum(math.comb(m, i) for i in range(d + 1))


def psi_cells(d: int, D: int, m: int) -> int:
    """Cell bound for ``m`` real algebraic surfaces of degree ``<= D`` in ``R^d``."""
    if min(d, D, m) < 0:
        raise ValueError("d, D and m must be nonnegative")
    return 2 * (2 * D) ** d * sum(2**i * math.comb(4 * m + 1, i) for i in range(d + 1))


# ---------------------------------------------------------------------------
# bound formulas

ASYMPTOTIC = ("supermodular", "product_affine")

_REQUIRED = {
    "B2": ("n", "Y"),
    "B3": ("s", "p", "Y"),
    "separable_integer": ("R", "t", "Y"),
    "separable_rho": ("H", "rho", "n", "t", "Y"),
    "polynomial_corollary": ("R", "t", "H", "d", "n", "Y"),
    "soc": ("d", "n", "Y"),
    "soc_b0": ("n", "Y"),
    "psd": ("d", "n", "Y"),
    "2monotonic": ("r_prime", "q"),
}


def bound_value(name: str, **params):
    """Exact value of one single-inequality bound.

    ``Y`` is the size of the subfamily; ``q`` (for ``2monotonic``) is the list
    of free-coordinate counts ``#{j : y_j < c_j}`` over ``y`` in ``Y``.
    """
    if name not in _REQUIRED:
        raise InvalidInputError(f"unknown bound {name!r}")
    missing = [k for k in _REQUIRED[name] if k not in params]
    if missing:
        raise InvalidInputError(f"bound {name} needs {', '.join(missing)}")
    p = params
    if name == "B2":
        return p.get("r", 1) * p["n"] * p["Y"]
    if name == "B3":
        return p.get("r", 1) * p["s"] * p["p"] * (2 * p["Y"] + 1) ** p["p"]
    if name == "separable_integer":
        return (p["R"] - p["t"]) * p["Y"]
    if name == "separable_rho":
        return (p["H"] + (1 + p["rho"] * p["n"]) * p["t"] * p["Y"]) * p["Y"]
    if name == "polynomial_corollary":
        second = p["H"] + (1 + 2 ** p["d"] * p["n"]) * p["t"] * p["Y"]
        return min(p["R"] - p["t"], second) * p["Y"]
    if name == "soc":
        n = p["n"]
        return phi_cells(p["d"], n * (n - 1) // 2) * n * p["Y"]
    if name == "soc_b0":
        n = p["n"]
        return n * (n + 1) * (2 * p["Y"] + 1) ** 2
    if name == "psd":
        n = p["n"]
        return psi_cells(p["d"], 2, n * (n - 1) // 2) * n * p["Y"]
    if name == "2monotonic":
        return p["r_prime"] * sum(p["q"])
    raise AssertionError(name)  # pragma: no cover


def union_bound(values: Iterable) -> Fraction:
    """Bounds of the individual inequalities add up for the system."""
    return sum(values, Fraction(0))


# ---------------------------------------------------------------------------
# per-class applicability


def _is_int(q) -> bool:
    return Fraction(q).denominator == 1


def down_closed_constraints(system: InequalitySystem):
    """The constraints in ``<=`` form over the (possibly reflected) box, or
    None when some ``>=`` constraint has no ``<=`` counterpart in its class."""
    if system.mode != MIN_FEASIBLE:
        return list(system.constraints)
    c = system.box.c
    out = []
    for con in system.constraints:
        if con.kind == "linear":
            out.append(LinearIneq(con.a, exact.dot(con.a, c) - con.t))
        elif con.kind == "separable":
            tabs = [[tab[cj] - tab[cj - y] for y in range(cj + 1)]
                    for tab, cj in zip(con.tables, c)]
            out.append(SeparableIneq(tabs, sum(tab[cj] for tab, cj in zip(con.tables, c)) - con.t))
        elif con.kind == "psd":
            T = exact.mat_add(con.combination(c), con.T, -1)
            if not exact.is_psd(T):
                return None
            out.append(PsdIneq(con.mats, T, validate=False))
        else:
            return None
    return out


@dataclass
class _Term:
    """One bound family: per-constraint parameter dicts (``Y`` filled later)."""

    name: str
    per_constraint: list
    asymptotic: bool = False
    note: str = ""


def _integer_separable_params(con, box: IntBox):
    """(R, t, H, rho) for an integer-valued sum of separable terms, or None.

    Linear, separable-table and polynomial constraints are all read as
    ``sum_H a_H prod_{j in H} f_j^H(x_j)``.
    """
    c = box.c
    if con.kind == "linear":
        if not all(_is_int(a) for a in con.a):
            return None
        H = [j for j, a in enumerate(con.a) if a > 0]
        funcs = {j: (lambda x: x) for j in H}
        shift = 0
        R = con.value(c)
    elif con.kind == "separable":
        if not all(_is_int(v) for tab in con.tables for v in tab):
            return None
        tabs = con.tables
        shift = sum(tab[0] for tab in tabs)
        H = [j for j in range(con.n) if tabs[j][c[j]] != tabs[j][0]]
        funcs = {j: (lambda x, tab=tabs[j]: tab[x] - tab[0]) for j in H}
        R = con.value(c)
    elif con.kind == "polynomial":
        if not all(_is_int(coef) for coef, _ in con.terms):
            return None
        H = None
        funcs = None
        shift = 0
        R = con.value(c)
    else:
        return None
    t = min(math.floor(con.t), R)
    rho_ok = True
    if con.kind == "polynomial":
        rho = Fraction(1)
        for _, exps in con.terms:
            for j, dj in exps.items():
                for x in range(1, c[j]):
                    rho = max(rho, Fraction(x + 1, x) ** dj)
        Hsize = con.s
    else:
        rho = Fraction(1)
        for j in H:
            f = funcs[j]
            if c[j] >= 1 and f(1) < 1:
                rho_ok = False
                continue
            for x in range(1, c[j]):
                rho = max(rho, Fraction(f(x + 1), f(x)))
        Hsize = len(H)
    return {
        "R": Fraction(R), "t": Fraction(t), "shift": shift,
        "H": Hsize, "rho": rho, "rho_ok": rho_ok,
    }


def _sigma_candidates(con, box: IntBox):
    n = box.n
    zero = (0,) * n
    if con.kind == "soc":
        def marg(j):
            return math.sqrt(float(con.norm_sq(unit(n, j)))) + float(con.b[j])
        keys = [marg]
    elif con.evaluable:
        def marg(j):
            return con.value(unit(n, j)) - con.value(zero) if box.c[j] >= 1 else 0
        top = box.c

        def marg_top(j):
            if top[j] == 0:
                return 0
            below = tuple(v - (k == j) for k, v in enumerate(top))
            return con.value(top) - con.value(below)
        keys = [marg, marg_top]
    else:
        return []
    return [tuple(sorted(range(n), key=lambda j: (-key(j), j))) for key in keys]


def two_monotonic_permutation(con, box: IntBox):
    """A verified 2-monotonic permutation for ``con`` on ``box``, or None."""
    for sigma in _sigma_candidates(con, box):
        if check_2monotonic(con, box, sigma):
            return sigma
    return None


def applicable_bounds(system: InequalitySystem) -> list:
    """Bound families that apply to every constraint of the system."""
    cons = down_closed_constraints(system)
    box = system.box
    n = box.n
    terms: list = []
    if cons is None:
        if "product_affine" in system.kinds():
            terms.append(_Term("product_affine", [{"L": system.encoding_length()}], True,
                               "quasi-polynomial bound with unspecified constant"))
        return terms
    kinds = {con.kind for con in cons}

    if kinds <= {"linear", "separable"}:
        terms.append(_Term("B2", [{"n": n} for _ in cons]))
    if kinds == {"polynomial"}:
        terms.append(_Term("B3", [{"s": con.s, "p": max(con.p, 1)} for con in cons]))

    integer = [_integer_separable_params(con, box) for con in cons]
    if cons and all(p is not None for p in integer):
        terms.append(_Term("separable_integer",
                           [{"R": p["R"] - p["shift"], "t": p["t"] - p["shift"]} for p in integer]))
        if all(p["rho_ok"] and p["H"] > 0 for p in integer):
            terms.append(_Term("separable_rho", [
                {"H": p["H"], "rho": p["rho"], "n": n, "t": max(p["t"] - p["shift"], 0)}
                for p in integer
            ]))
        if kinds == {"polynomial"}:
            terms.append(_Term("polynomial_corollary", [
                {"R": p["R"], "t": max(p["t"], 0), "H": con.s, "d": con.degree, "n": n}
                for p, con in zip(integer, cons)
            ]))

    if kinds == {"soc"}:
        terms.append(_Term("soc", [{"d": con.d, "n": n} for con in cons]))
        if all(all(v == 0 for v in con.b) for con in cons):
            terms.append(_Term("soc_b0", [{"n": n} for _ in cons]))
    if kinds == {"psd"}:
        terms.append(_Term("psd", [{"d": exact.rank_psd(con.T), "n": n} for con in cons]))

    if all(con.evaluable or con.kind == "soc" for con in cons):
        sigmas = [two_monotonic_permutation(con, box) for con in cons]
        if cons and all(s is not None for s in sigmas):
            terms.append(_Term("2monotonic", [{"r_prime": len(set(sigmas)),
                                               "sigmas": sorted(set(sigmas))}]))

    if kinds == {"supermodular_table"}:
        per = []
        for con in cons:
            tau = traction(con, box)
            R = con.value(box.c)
            ratio = None if tau == INFINITY else (R - min(con.t, R)) / tau
            per.append({"R": R, "t": con.t, "tau": tau, "ratio": ratio})
        terms.append(_Term("supermodular", per, True,
                           "|Y|^o(log((R-t)/tau)); no constant to assert"))
    return terms


# ---------------------------------------------------------------------------
# reports


@dataclass
class BoundReport:
    kind: str
    bound: str
    value: object
    measured: int
    Y_size: int
    params: dict = field(default_factory=dict)
    verdict: str = "pass"
    trial: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["value"] = _jsonable(self.value)
        d["params"] = {k: _jsonable(v) for k, v in self.params.items()}
        return d


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, (list, tuple)):
        return [_jsonable(e) for e in v]
    if isinstance(v, dict):
        return {k: _jsonable(e) for k, e in v.items()}
    return v


def format_reports(reports: Sequence[BoundReport]) -> str:
    head = f"{'trial':>5}  {'class':<18} {'bound':<22} {'|Y|':>4} {'measured':>8} {'bound value':>14}  verdict"
    lines = [head, "-" * len(head)]
    for r in reports:
        val = r.value
        if isinstance(val, Fraction):
            val = str(val)
        elif val is None:
            val = "-"
        lines.append(
            f"{r.trial:>5}  {r.kind:<18} {r.bound:<22} {r.Y_size:>4} {r.measured:>8} {str(val):>14}  {r.verdict}"
        )
    return "\n".join(lines)


def reports_to_json(reports: Sequence[BoundReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=1, sort_keys=True)


# ---------------------------------------------------------------------------
# empirical verification


def empirical_dual_intersection(system, Y: Iterable[Sequence[int]], *, families=None):
    """``|I(Y) ∩ I(F)|`` and the set itself, in the down-closed coordinates.

    ``families`` may pass a precomputed ``(F, I(F))``.
    """
    oracle, _ = as_down_closed(system)
    F, IF = families if families is not None else enumerate_all(oracle)
    Y = {tuple(y) for y in Y}
    if not Y <= F:
        raise InvalidInputError(f"Y contains non-maximal vectors: {sorted(Y - F)}")
    X = brute_IA(oracle.box, Y) & IF
    return len(X), X


def _kind_of(system) -> str:
    kinds = sorted(system.kinds())
    return kinds[0] if len(kinds) == 1 else "+".join(kinds)


def evaluate_terms(terms, box: IntBox, Y: Sequence[IntVec]) -> list:
    """(term, value) pairs for a concrete subfamily ``Y``."""
    out = []
    k = len(Y)
    for term in terms:
        if term.asymptotic:
            out.append((term, None))
        elif term.name == "2monotonic":
            q = [sum(1 for yj, cj in zip(y, box.c) if yj < cj) for y in Y]
            out.append((term, bound_value("2monotonic", r_prime=term.per_constraint[0]["r_prime"], q=q)))
        else:
            vals = [bound_value(term.name, **{**p, "Y": k}) for p in term.per_constraint]
            out.append((term, union_bound(vals)))
    return out


def verify_bounds(system: InequalitySystem, trials: int = 20, rng=None,
                  sizes: Sequence[int] | None = None, *, families=None) -> list:
    """Sample subfamilies ``Y ⊆ F`` and compare the measured dual
    intersection with every applicable bound.

    Returns one :class:`BoundReport` per (trial, bound); ``verdict`` is
    ``"pass"``, ``"fail"`` or ``"asymptotic"`` (reported, never asserted).
    """
    rng = rng if rng is not None else random.Random(0)
    oracle, _ = as_down_closed(system)
    F, IF = families if families is not None else enumerate_all(oracle)
    if not F:
        return []
    terms = applicable_bounds(system)
    Fs = sorted(F)
    kind = _kind_of(system)
    reports = []
    for trial in range(trials):
        k = rng.choice(sizes) if sizes else rng.randint(1, len(Fs))
        k = max(1, min(k, len(Fs)))
        Y = sorted(rng.sample(Fs, k))
        measured = len(brute_IA(oracle.box, Y) & IF)
        for term, value in evaluate_terms(terms, oracle.box, Y):
            if term.asymptotic:
                verdict = "asymptotic"
            else:
                verdict = "pass" if measured <= value else "fail"
            params = {"r": len(system.constraints), "n": system.n, "L": system.encoding_length()}
            for i, p in enumerate(term.per_constraint):
                for key, v in p.items():
                    params[f"{key}[{i}]" if len(term.per_constraint) > 1 else key] = v
            reports.append(BoundReport(kind, term.name, value, measured, k, params, verdict, trial))
    return reports


# ---------------------------------------------------------------------------
# intersection inequality for threshold-separable set families


def intersection_lemma_check(U, w, S, T, t1, t2):
    """Check both inequalities for families ``S, T`` over ``U``.

    Returns ``None`` if the preconditions fail (threshold separability,
    ``|S| >= 2``, every pairwise intersection of ``S`` inside a member of
    ``T``); otherwise ``(part_i, part_ii)`` as booleans.
    """
    t1, t2 = Fraction(t1), Fraction(t2)
    if t2 <= t1:
        raise InvalidInputError("need t1 < t2")
    U = frozenset(U)
    S = [frozenset(s) for s in S]
    T = [frozenset(s) for s in T]
    w = {u: Fraction(w[u]) for u in U}
    if any(v < 0 for v in w.values()):
        return None

    def weight(X):
        return sum((w[u] for u in X), Fraction(0))

    if len(set(S)) != len(S) or len(S) < 2 or not T:
        return None
    if any(not s <= U for s in S + T):
        return None
    if any(weight(s) < t2 for s in S) or any(weight(s) > t1 for s in T):
        return None
    for s, s2 in itertools.combinations(S, 2):
        if not any(s & s2 <= x for x in T):
            return None
    part_i = len(S) <= sum(len(U - x) for x in T)
    part_ii = len(S) <= (weight(U) - t1) / (t2 - t1) * len(T)
    return part_i, part_ii


# ---------------------------------------------------------------------------
# sorting permutations of the weight vectors


def _ball_samples(rng: np.random.Generator, count: int, d: int, nonneg: bool) -> np.ndarray:
    g = rng.standard_normal((count, d))
    if nonneg:
        g = np.abs(g)
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g * rng.random((count, 1)) ** (1.0 / d)


def _orders(w: np.ndarray) -> set:
    # stable sort on -w: equal weights keep ascending index order
    perms = np.argsort(-w, axis=1, kind="stable")
    return {tuple(int(v) for v in row) for row in np.unique(perms, axis=0)}


def distinct_weight_orders(ineq, samples: int = 10_000, rng=None):
    """Count the distinct sorting permutations of the weight vectors.

    SOC: ``w = A^T u + b`` over the nonnegative unit ball.  PSD: after rank
    reduction, ``w_j = u^T C^j u`` over the unit ball of ``R^rank``.  The
    count is a sampled lower bound on the true number of orders.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = rng if rng is not None else np.random.default_rng(0)
    if isinstance(ineq, SocIneq):
        A = np.array([[float(v) for v in row] for row in ineq.A]).reshape(ineq.d, ineq.n)
        b = np.array([float(v) for v in ineq.b])
        if ineq.d == 0:
            w = b[None, :]
        else:
            u = _ball_samples(rng, samples, ineq.d, True)
            w = u @ A + b
        perms = _orders(w)
        return len(perms), perms
    if isinstance(ineq, PsdIneq):
        red = psd_reduce(ineq)
        d = red.rank
        if d == 0 or not red.kept:
            return 1, {tuple(red.kept)}
        C = np.array([[[float(v) for v in row] for row in red.C[j]] for j in red.kept])
        u = _ball_samples(rng, samples, d, False)
        w = np.einsum("si,jik,sk->sj", u, C, u)
        perms = {tuple(red.kept[i] for i in p) for p in _orders(w)}
        return len(perms), perms
    raise TypeError("distinct_weight_orders expects a SocIneq or PsdIneq")


def cell_bound(ineq) -> int:
    n = ineq.n
    if isinstance(ineq, SocIneq):
        return phi_cells(ineq.d, n * (n - 1) // 2)
    if isinstance(ineq, PsdIneq):
        return psi_cells(exact.rank_psd(ineq.T), 2, n * (n - 1) // 2)
    raise TypeError("cell_bound expects a SocIneq or PsdIneq")
