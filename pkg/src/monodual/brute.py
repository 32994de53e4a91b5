"""Exhaustive reference enumeration for small boxes."""

from __future__ import annotations

from .lattice import IntBox, shift
from .oracles import MIN_FEASIBLE


def feasibility_table(oracle, limit: int | None = None) -> dict:
    box: IntBox = oracle.box
    box.check_capacity(limit)
    return {x: oracle.is_feasible(x) for x in box.points()}


def _extremes(box: IntBox, feas: dict, up_closed: bool) -> tuple[set, set]:
    """Extreme points of a monotone 0/1 table.

    For a down-closed table returns (maximal feasible, minimal infeasible);
    for an up-closed one (minimal feasible, maximal infeasible).
    """
    n, c = box.n, box.c
    step = -1 if up_closed else 1

    def neighbours(x, direction):
        for j in range(n):
            y = shift(x, j, direction)
            if 0 <= y[j] <= c[j]:
                yield y

    wanted, dual = set(), set()
    for x, ok in feas.items():
        if ok:
            if all(not feas[y] for y in neighbours(x, step)):
                wanted.add(x)
        elif all(feas[y] for y in neighbours(x, -step)):
            dual.add(x)
    return wanted, dual


def enumerate_all(system, limit: int | None = None) -> tuple[set, set]:
    """Scan the box.  For ``<=`` systems: (F, I(F)) = (maximal feasible,
    minimal infeasible); for ``>=`` systems: (minimal feasible, maximal
    infeasible)."""
    feas = feasibility_table(system, limit)
    up = getattr(system, "mode", None) == MIN_FEASIBLE
    return _extremes(system.box, feas, up)


def brute_minimal_feasible_ge(system, limit: int | None = None) -> set:
    """Minimal feasible points of an up-closed (``>=``) system."""
    feas = feasibility_table(system, limit)
    return _extremes(system.box, feas, True)[0]
