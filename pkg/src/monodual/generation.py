"""Joint generation of maximal feasible and minimal infeasible vectors.

Every engine here works on a *down-closed* feasibility oracle: any object
with a ``box`` (:class:`~monodual.lattice.IntBox`) and an ``is_feasible``
method.  ``>=`` systems are turned into such an oracle by :func:`reflect`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .dualization import dual_step
from .lattice import Antichain, IntBox, IntVec, shift
from .oracles import MAX_FEASIBLE, MIN_FEASIBLE, InequalitySystem, InvalidInputError

MAX_FEAS = "MAX_FEAS"
MIN_INFEAS = "MIN_INFEAS"
MIN_FEAS = "MIN_FEAS"
MAX_INFEAS = "MAX_INFEAS"


class ReflectedSystem:
    """``y`` is feasible iff ``c - y`` is feasible for the wrapped system.

    Reflecting a ``>=`` system yields a down-closed oracle whose maximal
    feasible points are ``c - g`` for the minimal feasible points ``g`` of the
    original, and vice versa.
    """

    def __init__(self, base):
        self.base = base
        self.box: IntBox = base.box
        base_mode = getattr(base, "mode", MAX_FEASIBLE)
        self.mode = MIN_FEASIBLE if base_mode == MAX_FEASIBLE else MAX_FEASIBLE

    def is_feasible(self, y: Sequence[int]) -> bool:
        return self.base.is_feasible(self.box.reflect(y))

    def coordinate_map(self, y: Sequence[int]) -> IntVec:
        return self.box.reflect(y)

    def __repr__(self):
        return f"ReflectedSystem({self.base!r})"


def reflect(system) -> ReflectedSystem:
    return ReflectedSystem(system)


def as_down_closed(system):
    """The oracle the engines run on, and the map back to user coordinates."""
    if getattr(system, "mode", MAX_FEASIBLE) == MIN_FEASIBLE:
        refl = reflect(system)
        return refl, refl.coordinate_map
    return system, tuple


class CountingOracle:
    def __init__(self, oracle):
        self.oracle = oracle
        self.box = oracle.box
        self.calls = 0

    def is_feasible(self, x) -> bool:
        self.calls += 1
        return self.oracle.is_feasible(x)


def maximalize(oracle, x: Sequence[int]) -> IntVec:
    """Raise ``x`` to a maximal feasible vector, coordinate by coordinate,
    using binary search for the largest feasible value of each."""
    if not oracle.is_feasible(x):
        raise InvalidInputError(f"{tuple(x)} is not feasible")
    c = oracle.box.c
    x = list(x)
    for j in range(len(x)):
        lo, hi = x[j], c[j]
        while lo < hi:
            mid = (lo + hi + 1) // 2
            x[j] = mid
            if oracle.is_feasible(x):
                lo = mid
            else:
                hi = mid - 1
        x[j] = lo
    return tuple(x)


def minimalize(oracle, x: Sequence[int]) -> IntVec:
    """Lower ``x`` to a minimal infeasible vector (dual of :func:`maximalize`)."""
    if oracle.is_feasible(x):
        raise InvalidInputError(f"{tuple(x)} is feasible")
    x = list(x)
    for j in range(len(x)):
        lo, hi = 0, x[j]
        while lo < hi:
            mid = (lo + hi) // 2
            x[j] = mid
            if oracle.is_feasible(x):
                lo = mid + 1
            else:
                hi = mid
        x[j] = hi
    return tuple(x)


def is_maximal_feasible(oracle, x) -> bool:
    c = oracle.box.c
    return oracle.is_feasible(x) and all(
        x[j] == c[j] or not oracle.is_feasible(shift(x, j, 1)) for j in range(len(x))
    )


def is_minimal_infeasible(oracle, x) -> bool:
    return not oracle.is_feasible(x) and all(
        oracle.is_feasible(shift(x, j, -1)) for j in range(len(x)) if x[j] > 0
    )


@dataclass
class GenerationState:
    A: Antichain = field(default_factory=lambda: Antichain("max"))
    B: Antichain = field(default_factory=lambda: Antichain("min"))
    oracle_calls: int = 0
    dual_steps: int = 0
    done: bool = False


class JointGenerator:
    """Incremental joint generation on a down-closed oracle.

    Iterating yields ``(tag, vector)`` pairs in discovery order with tags
    ``MAX_FEAS`` / ``MIN_INFEAS``; for a ``min_feasible`` system the vectors
    are mapped back and tagged ``MIN_FEAS`` / ``MAX_INFEAS``.
    """

    def __init__(self, system, seed: Sequence[Sequence[int]] = ()):
        oracle, self._to_user = as_down_closed(system)
        self.reflected = oracle is not system
        self.oracle = CountingOracle(oracle)
        self.box = oracle.box
        self.state = GenerationState()
        for y in seed:
            y = tuple(y)
            if self.reflected:
                y = self.box.reflect(y)
            if not is_maximal_feasible(self.oracle, y):
                raise InvalidInputError(f"seed vector {y} is not maximal feasible")
            self.state.A.insert(y)
        self.state.oracle_calls = self.oracle.calls

    @property
    def tags(self):
        return (MIN_FEAS, MAX_INFEAS) if self.reflected else (MAX_FEAS, MIN_INFEAS)

    def step(self):
        """One dualization round: ``(tag, vector)`` or None once complete."""
        st = self.state
        if st.done:
            return None
        outcome = dual_step(self.box, st.A, st.B, strict=False, validate=False)
        st.dual_steps += 1
        if outcome.is_dual:
            st.done = True
            st.oracle_calls = self.oracle.calls
            return None
        x = outcome.witness
        feas_tag, infeas_tag = self.tags
        if self.oracle.is_feasible(x):
            v = maximalize(self.oracle, x)
            st.A.insert(v)
            item = (feas_tag, self._to_user(v))
        else:
            v = minimalize(self.oracle, x)
            st.B.insert(v)
            item = (infeas_tag, self._to_user(v))
        st.oracle_calls = self.oracle.calls
        return item

    def __iter__(self) -> Iterator[tuple]:
        while True:
            item = self.step()
            if item is None:
                return
            yield item

    def run(self, limit: int | None = None) -> list:
        out = []
        for item in self:
            out.append(item)
            if limit is not None and len(out) >= limit:
                break
        return out


def joint_generate(system, limit: int | None = None) -> Iterator[tuple]:
    """Stream ``(tag, vector)`` until both families are complete (or ``limit``)."""
    gen = JointGenerator(system)
    for k, item in enumerate(gen, 1):
        yield item
        if limit is not None and k >= limit:
            return


def generate_families(system) -> tuple[set, set]:
    """Run to completion; return (wanted family, dual family) as sets."""
    F, D = set(), set()
    gen = JointGenerator(system)
    feas_tag, _ = gen.tags
    for tag, v in gen:
        (F if tag == feas_tag else D).add(v)
    return F, D


@dataclass
class GenStepResult:
    new: IntVec | None
    discarded: int
    discarded_vectors: list

    @property
    def complete(self) -> bool:
        return self.new is None


def gen_step(system, Y: Sequence[Sequence[int]]) -> GenStepResult:
    """Either a maximal feasible vector outside ``Y`` or confirmation that
    ``Y`` is everything, with the dual-family vectors met on the way."""
    gen = JointGenerator(system, seed=Y)
    feas_tag, _ = gen.tags
    dropped = []
    for tag, v in gen:
        if tag == feas_tag:
            return GenStepResult(v, len(dropped), dropped)
        dropped.append(v)
    return GenStepResult(None, len(dropped), dropped)


def sorted_stream(items) -> list:
    return sorted(items, key=lambda tv: (tv[0], tv[1]))
