"""Integer-box lattice primitives.

Vectors are plain tuples of Python ints (arbitrary precision).  A box
``IntBox(c)`` is the product of chains ``{0, ..., c_j}`` ordered
componentwise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

IntVec = tuple

#: default cap on the number of box points any exhaustive routine may visit
DEFAULT_CAPACITY = 10**6


class DimensionError(ValueError):
    """Vectors of different lengths were combined."""


class CapacityError(RuntimeError):
    """An exhaustive routine was asked to scan a box that is too large."""


def _check_len(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} != {len(y)}")


def dominates(x: Sequence[int], y: Sequence[int]) -> bool:
    """True iff ``x >= y`` componentwise."""
    _check_len(x, y)
    return all(a >= b for a, b in zip(x, y))


def meet(x: Sequence[int], y: Sequence[int]) -> IntVec:
    _check_len(x, y)
    return tuple(min(a, b) for a, b in zip(x, y))


def join(x: Sequence[int], y: Sequence[int]) -> IntVec:
    _check_len(x, y)
    return tuple(max(a, b) for a, b in zip(x, y))


def unit(n: int, j: int) -> IntVec:
    return tuple(1 if i == j else 0 for i in range(n))


def shift(x: Sequence[int], j: int, delta: int) -> IntVec:
    """``x + delta * 1^j``."""
    y = list(x)
    y[j] += delta
    return tuple(y)


def intvec(x: Iterable[int]) -> IntVec:
    v = tuple(int(e) for e in x)
    if any(e < 0 for e in v):
        raise ValueError(f"negative entry in {v}")
    return v


@dataclass(frozen=True)
class IntBox:
    """The box ``C = {x : 0 <= x <= c}``."""

    c: IntVec

    def __post_init__(self):
        object.__setattr__(self, "c", intvec(self.c))

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def volume(self) -> int:
        return math.prod(cj + 1 for cj in self.c)

    def contains(self, x: Sequence[int]) -> bool:
        return len(x) == self.n and all(0 <= a <= b for a, b in zip(x, self.c))

    def check_capacity(self, limit: int | None = None) -> None:
        limit = DEFAULT_CAPACITY if limit is None else limit
        if self.volume > limit:
            raise CapacityError(
                f"box {self.c} has {self.volume} points, above the limit of {limit}"
            )

    def points(self) -> Iterator[IntVec]:
        """Row-major scan (last coordinate varies fastest)."""
        return itertools.product(*(range(cj + 1) for cj in self.c))

    def reflect(self, x: Sequence[int]) -> IntVec:
        """``c - x``."""
        return tuple(cj - xj for cj, xj in zip(self.c, x))


class Antichain:
    """Pairwise-incomparable vectors, keeping either maximal or minimal ones.

    With ``orientation="max"`` an inserted vector absorbs every member it
    dominates and is rejected if some member dominates it; ``"min"`` is the
    dual.  Iteration is in lexicographic order.
    """

    def __init__(self, orientation: str = "max", members: Iterable[Sequence[int]] = ()):
        if orientation not in ("max", "min"):
            raise ValueError(f"orientation must be 'max' or 'min', not {orientation!r}")
        self.orientation = orientation
        self._members: set[IntVec] = set()
        for x in members:
            self.insert(x)

    def _above(self, x, y) -> bool:
        # x is "at least as extreme" as y in the kept direction
        return dominates(x, y) if self.orientation == "max" else dominates(y, x)

    def insert(self, x: Sequence[int]) -> bool:
        """Insert ``x``; return False if an existing member absorbs it."""
        x = tuple(x)
        for m in self._members:
            if self._above(m, x):
                return False
        self._members = {m for m in self._members if not self._above(x, m)}
        self._members.add(x)
        return True

    def copy(self) -> "Antichain":
        other = Antichain(self.orientation)
        other._members = set(self._members)
        return other

    def __contains__(self, x) -> bool:
        return tuple(x) in self._members

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[IntVec]:
        return iter(sorted(self._members))

    def __eq__(self, other) -> bool:
        if isinstance(other, Antichain):
            return self.orientation == other.orientation and self._members == other._members
        return NotImplemented

    def __repr__(self) -> str:
        return f"Antichain({self.orientation!r}, {sorted(self._members)})"

    def as_set(self) -> set[IntVec]:
        return set(self._members)


def antichain_insert(A: Antichain, x: Sequence[int]) -> Antichain:
    """Non-mutating insert: returns a new antichain."""
    B = A.copy()
    B.insert(x)
    return B


def is_antichain(xs: Iterable[Sequence[int]]) -> bool:
    xs = list(xs)
    return all(
        not dominates(x, y) for i, x in enumerate(xs) for k, y in enumerate(xs) if i != k
    )


def maximal_elements(xs: Iterable[Sequence[int]]) -> list[IntVec]:
    return list(Antichain("max", xs))


def minimal_elements(xs: Iterable[Sequence[int]]) -> list[IntVec]:
    return list(Antichain("min", xs))
