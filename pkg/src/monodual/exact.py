"""Exact rational linear algebra used by the SOC and PSD classes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

Matrix = list  # list of lists of Fraction


def as_fraction(v) -> Fraction:
    """Coerce ints, ``"p/q"`` strings, decimals strings and Fractions.

    Floats are converted exactly (binary expansion), which is rarely what a
    caller wants; prefer strings.
    """
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(v, (int, str, float)):
        return Fraction(v)
    raise TypeError(f"cannot interpret {v!r} as a rational")


def as_matrix(rows) -> Matrix:
    M = [[as_fraction(v) for v in row] for row in rows]
    if M and any(len(r) != len(M[0]) for r in M):
        raise ValueError("ragged matrix")
    return M


def is_symmetric(M: Matrix) -> bool:
    m = len(M)
    return all(len(r) == m for r in M) and all(
        M[i][k] == M[k][i] for i in range(m) for k in range(i)
    )


def mat_add(A: Matrix, B: Matrix, scale=1) -> Matrix:
    return [[a + scale * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)]


def identity(m: int) -> Matrix:
    return [[Fraction(int(i == k)) for k in range(m)] for i in range(m)]


def zeros(m: int, k: int | None = None) -> Matrix:
    return [[Fraction(0)] * (m if k is None else k) for _ in range(m)]


def trace(M: Matrix) -> Fraction:
    return sum((M[i][i] for i in range(len(M))), Fraction(0))


def diag(values) -> Matrix:
    values = [as_fraction(v) for v in values]
    m = len(values)
    return [[values[i] if i == k else Fraction(0) for k in range(m)] for i in range(m)]


@dataclass
class LDLResult:
    """``P M P^T = L D L^T`` with ``perm`` encoding ``P`` (row i of PMP^T is row perm[i] of M)."""

    psd: bool
    rank: int
    perm: list
    L: Matrix
    D: list


def ldl_pivoted(M: Matrix, *, stop_early: bool = False) -> LDLResult:
    """Symmetric LDL^T with diagonal (full symmetric) pivoting, exact.

    At each step the largest remaining diagonal entry is the pivot (lowest
    index on ties).  A negative maximum, or a zero maximum over a block that
    is not identically zero, certifies that ``M`` is not PSD.
    """
    m = len(M)
    W = [list(r) for r in M]
    perm = list(range(m))
    L = identity(m)
    D: list = []
    for k in range(m):
        p = max(range(k, m), key=lambda i: (W[i][i], -i))
        piv = W[p][p]
        if piv <= 0:
            ok = piv == 0 and all(W[i][j] == 0 for i in range(k, m) for j in range(k, m))
            return LDLResult(ok, k, perm, L, D + [Fraction(0)] * (m - k))
        if p != k:
            W[k], W[p] = W[p], W[k]
            for row in W:
                row[k], row[p] = row[p], row[k]
            perm[k], perm[p] = perm[p], perm[k]
            for j in range(k):
                L[k][j], L[p][j] = L[p][j], L[k][j]
        D.append(piv)
        for i in range(k + 1, m):
            L[i][k] = W[i][k] / piv
        for i in range(k + 1, m):
            lik = L[i][k]
            if lik == 0:
                continue
            for j in range(k + 1, i + 1):
                W[i][j] -= lik * W[k][j]
                W[j][i] = W[i][j]
    return LDLResult(True, m, perm, L, D)


def is_psd(M: Matrix) -> bool:
    """Exact PSD test for a symmetric rational matrix."""
    return ldl_pivoted(M).psd


def rank_psd(M: Matrix) -> int:
    res = ldl_pivoted(M)
    if not res.psd:
        raise ValueError("matrix is not positive semidefinite")
    return res.rank


def lower_inverse(L: Matrix) -> Matrix:
    """Inverse of a unit lower-triangular matrix."""
    m = len(L)
    X = identity(m)
    for col in range(m):
        for i in range(col + 1, m):
            X[i][col] = -sum((L[i][k] * X[k][col] for k in range(col, i)), Fraction(0))
    return X


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    a, b = q.numerator, q.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def sqrt_le(P: Fraction, r: Fraction) -> bool:
    """``sqrt(P) <= r`` for rational ``P >= 0``."""
    return r >= 0 and P <= r * r


def sqrt_diff_ge(P: Fraction, Q: Fraction, r: Fraction) -> bool:
    """Decide ``sqrt(P) - sqrt(Q) >= r`` exactly (``P, Q >= 0``)."""
    # rewrite as sqrt(P) >= sqrt(Q) + r
    if r <= 0 and Q <= r * r:
        return True  # right-hand side is <= 0
    k = P - Q - r * r  # need k >= 2 r sqrt(Q)
    if r >= 0:
        return k >= 0 and k * k >= 4 * r * r * Q
    return k >= 0 or k * k <= 4 * r * r * Q


def dot(a: Sequence[Fraction], x: Sequence[int]) -> Fraction:
    return sum((ai * xi for ai, xi in zip(a, x)), Fraction(0))


def bit_length(q: Fraction) -> int:
    q = as_fraction(q)
    return abs(q.numerator).bit_length() + q.denominator.bit_length()
