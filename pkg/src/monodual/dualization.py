"""Dualization over integer boxes.

Given an antichain ``A`` and a family ``B`` in a box ``C``, either find a
point that is neither below some ``a`` nor above some ``b``, or certify that
``A`` and ``B`` cover ``C`` between them.  A found point is pushed down to a
minimal non-dominated vector of ``A`` before it is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import IntBox, IntVec, dominates, maximal_elements, minimal_elements, shift
from .oracles import InvalidInputError

#: recursion depth after which a sub-box is settled by grid search
MAX_DEPTH = 64


@dataclass(frozen=True)
class DualOutcome:
    witness: IntVec | None

    @property
    def is_dual(self) -> bool:
        return self.witness is None


def _dominated(x, A) -> bool:
    return any(dominates(a, x) for a in A)


def is_in_IA(box: IntBox, A: Iterable[Sequence[int]], x: Sequence[int]) -> bool:
    """``x`` is not below any member of ``A`` but every unit decrement is."""
    A = list(A)
    x = tuple(x)
    if _dominated(x, A):
        return False
    return all(_dominated(shift(x, j, -1), A) for j in range(len(x)) if x[j] > 0)


def candidate_grid(box: IntBox, A: Iterable[Sequence[int]]) -> list:
    """Per-coordinate values a member of I(A) can take: 0 and ``a_j + 1``."""
    A = list(A)
    return [
        sorted({0} | {a[j] + 1 for a in A if a[j] < box.c[j]}) for j in range(box.n)
    ]


def brute_IA(box: IntBox, A: Iterable[Sequence[int]], limit: int | None = None) -> set:
    """All minimal vectors of the box not dominated by ``A``."""
    A = list(A)
    box.check_capacity(limit)
    grid = candidate_grid(box, A)
    return {x for x in itertools.product(*grid) if is_in_IA(box, A, x)}


def minimalize_against(box: IntBox, A: Sequence[IntVec], x: Sequence[int]) -> IntVec:
    """Lower coordinates in index order, each by binary search, while ``x``
    stays non-dominated by ``A``."""
    x = list(x)
    for j in range(len(x)):
        lo, hi = 0, x[j]  # hi is known non-dominated
        while lo < hi:
            mid = (lo + hi) // 2
            x[j] = mid
            if _dominated(x, A):
                lo = mid + 1
            else:
                hi = mid
        x[j] = hi
    return tuple(x)


def _grid_search(lo, hi, A, B):
    grid = [
        sorted({lo[j]} | {a[j] + 1 for a in A if lo[j] <= a[j] < hi[j]})
        for j in range(len(lo))
    ]
    for x in itertools.product(*grid):
        if not _dominated(x, A) and not any(dominates(x, b) for b in B):
            return x
    return None


def _choose_split(lo, hi, A, B):
    best = None
    for j in range(len(lo)):
        if lo[j] >= hi[j]:
            continue
        vals = sorted([a[j] for a in A] + [b[j] - 1 for b in B])
        z = vals[(len(vals) - 1) // 2]
        z = min(max(z, lo[j]), hi[j] - 1)
        low_size = len(A) + sum(1 for b in B if b[j] <= z)
        high_size = sum(1 for a in A if a[j] > z) + len(B)
        cost = (max(low_size, high_size), j)
        if best is None or cost < best[0]:
            best = (cost, j, z)
    return best[1], best[2]


def _uncovered(lo, hi, A, B, depth):
    """Some x in [lo, hi] with x not below any a and not above any b, or None.

    ``A`` holds members with ``a >= lo`` truncated to ``hi``; ``B`` holds
    members with ``b <= hi`` raised to ``lo``.
    """
    if any(dominates(a, hi) for a in A) or any(dominates(lo, b) for b in B):
        return None
    if not A:
        return lo
    if not B:
        return hi
    if len(A) == 1:
        (a,) = A
        for j in range(len(lo)):
            if a[j] < hi[j]:
                x = list(lo)
                x[j] = max(lo[j], a[j] + 1)
                if not any(dominates(x, b) for b in B):
                    return tuple(x)
        return None
    if len(B) == 1:
        (b,) = B
        for j in range(len(lo)):
            if b[j] > lo[j]:
                x = list(hi)
                x[j] = min(hi[j], b[j] - 1)
                if not _dominated(x, A):
                    return tuple(x)
        return None
    if depth >= MAX_DEPTH:
        return _grid_search(lo, hi, A, B)

    j, z = _choose_split(lo, hi, A, B)
    hi_low = hi[:j] + (z,) + hi[j + 1:]
    A_low = maximal_elements(tuple(min(v, h) for v, h in zip(a, hi_low)) for a in A)
    B_low = [b for b in B if b[j] <= z]
    w = _uncovered(lo, hi_low, A_low, B_low, depth + 1)
    if w is not None:
        return w
    lo_high = lo[:j] + (z + 1,) + lo[j + 1:]
    A_high = [a for a in A if a[j] > z]
    B_high = minimal_elements(tuple(max(v, l) for v, l in zip(b, lo_high)) for b in B)
    return _uncovered(lo_high, hi, A_high, B_high, depth + 1)


def find_uncovered(box: IntBox, A: Iterable[Sequence[int]], B: Iterable[Sequence[int]]):
    A = maximal_elements(A)
    B = minimal_elements(B)
    lo = (0,) * box.n
    return _uncovered(lo, tuple(box.c), A, B, 0)


def check_instance(box: IntBox, A, B, *, strict: bool = True) -> None:
    """Raise :class:`InvalidInputError` on a malformed instance.

    The cross condition (no ``b`` below an ``a``) is always checked; with
    ``strict`` every ``b`` must moreover belong to ``I(A)``.
    """
    A, B = list(A), list(B)
    for x in (*A, *B):
        if not box.contains(x):
            raise InvalidInputError(f"{x} lies outside the box {box.c}")
    for b in B:
        if _dominated(b, A):
            raise InvalidInputError(f"{b} is dominated by A")
        if strict and not is_in_IA(box, A, b):
            raise InvalidInputError(f"{b} is not a minimal non-dominated vector of A")


def dual_step(box: IntBox, A: Iterable[Sequence[int]], B: Iterable[Sequence[int]],
              *, strict: bool = True, validate: bool = True) -> DualOutcome:
    """Find ``x`` in ``I(A)`` with ``x`` above no member of ``B``, or certify
    that every point of the box is below some ``a`` or above some ``b``.

    With ``strict`` the classical contract ``B ⊆ I(A)`` is enforced; joint
    generation passes ``strict=False`` because its ``B`` holds minimal
    infeasible vectors of the system, which need not be minimal against the
    partial ``A``.
    """
    A, B = list(A), [tuple(b) for b in B]
    if validate:
        check_instance(box, A, B, strict=strict)
    x = find_uncovered(box, A, B)
    if x is None:
        return DualOutcome(None)
    x = minimalize_against(box, A, x)
    if not is_in_IA(box, A, x) or any(dominates(x, b) for b in B):
        raise AssertionError(f"dualization produced an invalid witness {x}")
    return DualOutcome(x)
