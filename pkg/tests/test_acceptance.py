"""Acceptance gate: ten criteria at their stated tolerances.

Run under pytest (a summary section lists PASS/FAIL per criterion) or
directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import math
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from instances import CLASSES, random_psd, random_system  # noqa: E402

from monodual import exact  # noqa: E402
from monodual.applications import build_quantum_cover, build_transversal, decode_cover, is_cover  # noqa: E402
from monodual.bounds import (  # noqa: E402
    cell_bound,
    distinct_weight_orders,
    intersection_lemma_check,
    mobius_transform,
    verify_bounds,
)
from monodual.brute import enumerate_all  # noqa: E402
from monodual.generation import generate_families  # noqa: E402
from monodual.lattice import IntBox  # noqa: E402
from monodual.oracles import (  # noqa: E402
    PolynomialIneq,
    PsdIneq,
    SocIneq,
    float_margin_psd,
    make_system,
)

GOLDEN = Path(__file__).parent / "golden"


def criterion_1():
    start = time.perf_counter()
    system = make_system([PolynomialIneq([(1, {0: 1, 1: 1})], 1, 2)])
    F, IF = generate_families(system)
    elapsed = time.perf_counter() - start
    assert system.box.c == (1, 1)
    assert F == {(1, 1)} and IF == set()
    assert elapsed < 1.0, f"took {elapsed:.2f}s"
    return f"F={{(1,1)}}, I(F)=empty, {elapsed * 1000:.1f} ms"


def _criterion_2_instances():
    for kind in CLASSES:
        rng = random.Random(f"acceptance-{kind}")
        for _ in range(200):
            yield kind, random_system(rng, kind)


def criterion_2():
    start = time.perf_counter()
    count = 0
    for kind, system in _criterion_2_instances():
        got = generate_families(system)
        want = enumerate_all(system)
        assert got == want, f"{kind} instance {system} differs"
        count += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 300, f"took {elapsed:.0f}s"
    return f"{count} instances, 7 classes, {elapsed:.1f}s"


def _minimal_transversals(edges, n):
    hits = [
        set(S) for k in range(n + 1) for S in itertools.combinations(range(1, n + 1), k)
        if all(set(S) & set(e) for e in edges)
    ]
    return sorted(tuple(sorted(S)) for S in hits if not any(T < S for T in hits))


def criterion_3():
    start = time.perf_counter()
    rng = random.Random("acceptance-transversal")
    for _ in range(600):
        n = rng.randint(1, 5)
        m = rng.randint(1, 5)
        edges = [rng.sample(range(1, n + 1), rng.randint(1, n)) for _ in range(m)]
        F, _ = generate_families(build_transversal(edges, n))
        got = sorted(tuple(j + 1 for j, v in enumerate(x) if v) for x in F)
        assert got == _minimal_transversals(edges, n), edges
    elapsed = time.perf_counter() - start
    assert elapsed < 120, f"took {elapsed:.0f}s"
    return f"600 hypergraphs, {elapsed:.1f}s"


def criterion_4():
    checked = violations = 0
    for i, (kind, system) in enumerate(_criterion_2_instances()):
        reports = verify_bounds(system, 20, random.Random(i))
        checked += sum(r.verdict != "asymptotic" for r in reports)
        bad = [r for r in reports if r.verdict == "fail"]
        violations += len(bad)
        assert not bad, bad[0]
    assert checked > 0
    return f"{checked} bound checks, {violations} violations"


def _random_separable_sum(rng, box):
    terms = []
    for _ in range(rng.randint(1, 4)):
        H = rng.sample(range(box.n), rng.randint(1, box.n))
        funcs = {}
        for j in H:
            tab = [0]
            for _ in range(box.c[j]):
                tab.append(tab[-1] + rng.randint(0, 3))
            funcs[j] = tab
        terms.append((rng.randint(0, 3), funcs))
    const = rng.randint(0, 2)

    def f(x):
        return const + sum(a * math.prod(tab[x[j]] for j, tab in fs.items()) for a, fs in terms)
    return f


def criterion_5():
    rng = random.Random("acceptance-mobius")
    for _ in range(100):
        while True:
            n = rng.randint(1, 6)
            c = tuple(rng.randint(1, 7) for _ in range(n))
            if math.prod(cj + 1 for cj in c) <= 4096:
                break
        box = IntBox(c)
        f = _random_separable_sum(rng, box)
        table = mobius_transform(f, box)
        assert all(v >= 0 for v in table.coeffs.values())
        back = table.reconstruct()
        assert all(back[x] == f(x) for x in box.points())
    return "100 sums, inversion exact, all coefficients >= 0"


def _random_lemma_family(rng):
    while True:
        U = list(range(rng.randint(2, 8)))
        w = {u: Fraction(rng.randint(0, 5)) for u in U}
        total = sum(w.values())
        if total == 0:
            continue
        t1 = Fraction(rng.randint(0, int(total) - 1))
        t2 = t1 + Fraction(rng.randint(1, 6), rng.randint(1, 2))
        subsets = [frozenset(s) for k in range(len(U) + 1) for s in itertools.combinations(U, k)]
        low = [s for s in subsets if sum(w[u] for u in s) <= t1]
        high = [s for s in subsets if sum(w[u] for u in s) >= t2]
        if not low or len(high) < 2:
            continue
        T = rng.sample(low, rng.randint(1, min(4, len(low))))
        rng.shuffle(high)
        S = []
        for s in high:
            if all(any(s & s2 <= x for x in T) for s2 in S):
                S.append(s)
        if len(S) >= 2:
            return U, w, S, T, t1, t2


def criterion_6():
    rng = random.Random("acceptance-lemma")
    for _ in range(1000):
        U, w, S, T, t1, t2 = _random_lemma_family(rng)
        result = intersection_lemma_check(U, w, S, T, t1, t2)
        assert result is not None, "generated family fails the preconditions"
        assert result == (True, True), (U, w, S, T, t1, t2)
    return "1000 families, parts (i) and (ii) hold"


def criterion_7():
    rng = random.Random("acceptance-exactness")
    soc_done = psd_done = skipped = 0
    while soc_done < 500:
        n, d = rng.randint(1, 5), rng.randint(1, 3)
        A = [[Fraction(rng.randint(0, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(d)]
        b = [Fraction(rng.randint(0, 9), rng.randint(1, 4)) for _ in range(n)]
        x = [rng.randint(0, 3) for _ in range(n)]
        t = Fraction(rng.randint(0, 80), rng.randint(1, 4))
        con = SocIneq(A, b, t)
        val = con.float_value(x)
        if abs(val - float(t)) <= 1e-6:
            skipped += 1
            continue
        assert con.holds(x) == (val <= float(t)), (A, b, t, x)
        soc_done += 1
    while psd_done < 500:
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        mats = [random_psd(rng, m, rng.randint(0, m)) for _ in range(n)]
        T = random_psd(rng, m, rng.randint(0, m), -2, 3)
        x = [rng.randint(0, 2) for _ in range(n)]
        slack = exact.mat_add(T, PsdIneq(mats, T, validate=False).combination(x), -1)
        margin = float_margin_psd(slack)
        if abs(margin) <= 1e-6:
            skipped += 1
            continue
        assert exact.is_psd(slack) == (margin > 0), slack
        psd_done += 1
    return f"1000 agreements ({skipped} near-boundary draws skipped)"


def criterion_8():
    rng = random.Random("acceptance-orders")
    nrng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(100):
        n, d = rng.randint(2, 5), rng.randint(1, 3)
        con = SocIneq([[rng.randint(0, 4) for _ in range(n)] for _ in range(d)],
                      [rng.randint(0, 4) for _ in range(n)], 1)
        count, _ = distinct_weight_orders(con, 100_000, nrng)
        assert count <= cell_bound(con), (con, count)
        worst = max(worst, count / cell_bound(con))
    for _ in range(100):
        n, m = rng.randint(2, 5), rng.randint(1, 3)
        mats = [random_psd(rng, m, rng.randint(1, m)) for _ in range(n)]
        T = random_psd(rng, m, rng.randint(1, min(2, m)), -2, 3)
        con = PsdIneq(mats, T)
        assert exact.rank_psd(T) <= 2
        count, _ = distinct_weight_orders(con, 100_000, nrng)
        assert count <= cell_bound(con), (con, count)
    return f"200 instances within the cell bound (largest SOC ratio {worst:.2f})"


def random_quantum_operator(rng, d):
    """Rational symmetric ``A`` with ``0 <= A <= I``."""
    style = rng.randrange(3)
    if style == 0:
        return exact.diag([Fraction(rng.randint(0, 4), 4) for _ in range(d)])
    if style == 1:
        v = [rng.randint(-2, 2) for _ in range(d)]
        if not any(v):
            v[0] = 1
        lam = Fraction(rng.randint(1, 4), 4) / sum(x * x for x in v)
        return [[lam * v[i] * v[k] for k in range(d)] for i in range(d)]
    # rotation by a Pythagorean angle in one coordinate plane
    D = exact.diag([Fraction(rng.randint(0, 4), 4) for _ in range(d)])
    if d < 2:
        return D
    i, k = sorted(rng.sample(range(d), 2))
    cs, sn = rng.choice([(Fraction(3, 5), Fraction(4, 5)), (Fraction(5, 13), Fraction(12, 13))])
    Q = exact.identity(d)
    Q[i][i], Q[i][k], Q[k][i], Q[k][k] = cs, -sn, sn, cs
    return exact.mat_mul(exact.mat_mul(Q, D), exact.transpose(Q))


def _random_quantum_instance(rng):
    while True:
        d, n = rng.randint(1, 3), rng.randint(1, 5)
        ops = [random_quantum_operator(rng, d) for _ in range(n)]
        total = exact.zeros(d)
        for A in ops:
            total = exact.mat_add(total, A)
        if exact.is_psd(exact.mat_add(total, exact.identity(d), -1)):
            return ops


def criterion_9():
    rng = random.Random("acceptance-quantum")
    for _ in range(100):
        ops = _random_quantum_instance(rng)
        n = len(ops)
        F, _ = generate_families(build_quantum_cover(ops))
        got = sorted(decode_cover(x) for x in F)
        covers = [set(S) for k in range(n + 1) for S in itertools.combinations(range(1, n + 1), k)
                  if is_cover(ops, S)]
        want = sorted(tuple(sorted(S)) for S in covers if not any(T < S for T in covers))
        assert got == want, (ops, got, want)
    return "100 instances, decoded covers equal brute force"


def criterion_10():
    files = sorted(GOLDEN.glob("*.json"))
    assert files
    for path in files:
        runs = [
            subprocess.run([sys.executable, "-m", "monodual", "enumerate", str(path), "--stats"],
                           capture_output=True, check=True).stdout
            for _ in range(3)
        ]
        assert runs[0] and runs[0] == runs[1] == runs[2], path.name
    return f"{len(files)} golden files byte-identical over 3 runs"


CRITERIA = {
    1: (criterion_1, "footnote instance F = {(1,1)}, I(F) empty"),
    2: (criterion_2, "joint generation equals brute force, 7 classes x 200"),
    3: (criterion_3, "transversal encoding equals brute-force minimal transversals"),
    4: (criterion_4, "concrete dual bounds hold on every sampled Y"),
    5: (criterion_5, "Mobius inversion exact and nonnegative"),
    6: (criterion_6, "intersection inequalities on 1000 families"),
    7: (criterion_7, "exact SOC/PSD verdicts agree with floating checks"),
    8: (criterion_8, "sampled weight orders within cell bounds"),
    9: (criterion_9, "quantum covers equal brute force"),
    10: (criterion_10, "enumerate output is deterministic"),
}


def test_criterion_1():
    criterion_1()


def test_criterion_2():
    criterion_2()


def test_criterion_3():
    criterion_3()


def test_criterion_4():
    criterion_4()


def test_criterion_5():
    criterion_5()


def test_criterion_6():
    criterion_6()


def test_criterion_7():
    criterion_7()


def test_criterion_8():
    criterion_8()


def test_criterion_9():
    criterion_9()


def test_criterion_10():
    criterion_10()


if __name__ == "__main__":
    failed = 0
    for num, (func, title) in sorted(CRITERIA.items()):
        try:
            detail = func()
            print(f"criterion {num:>2}: PASS  {title} ({detail})")
        except AssertionError as err:
            failed += 1
            print(f"criterion {num:>2}: FAIL  {title} ({err})")
    sys.exit(1 if failed else 0)
