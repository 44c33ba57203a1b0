"""Exact dense linear algebra over the rationals.

Matrices are lists of lists of :class:`~fractions.Fraction`.  Rank uses
fraction-free Bareiss elimination on integer rows; solving uses plain
Gauss-Jordan over ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence

Matrix = List[List[Fraction]]


def zeros(rows: int, cols: int | None = None) -> Matrix:
    cols = rows if cols is None else cols
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        acc = out[i]
        for k, aik in enumerate(row):
            if aik:
                for j, bkj in enumerate(b[k]):
                    if bkj:
                        acc[j] += aik * bkj
    return out


def matadd(a: Matrix, b: Matrix, scale=1) -> Matrix:
    return [[x + scale * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scalar_shift(a: Matrix, c) -> Matrix:
    """``a + c*1``."""
    out = [list(r) for r in a]
    for i in range(len(out)):
        out[i][i] += c
    return out


def mat_pow(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    for _ in range(k):
        result = matmul(result, a)
    return result


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def _integer_rows(rows: Sequence[Sequence]) -> List[List[int]]:
    out = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = 1
        for x in fr:
            den = lcm(den, x.denominator)
        out.append([int(x * den) for x in fr])
    return out


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free elimination.

    Each row is scaled to integers first; Bareiss' exact division keeps the
    intermediate entries as minors of the scaled matrix.
    """
    m = _integer_rows(rows)
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            row = m[r]
            prow = m[rank]
            for c in range(col + 1, ncols):
                row[c] = (p * row[c] - f * prow[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss_det(a: Sequence[Sequence]) -> Fraction:
    """Determinant via Bareiss on the integer-scaled matrix."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    fr = [[Fraction(x) for x in r] for r in a]
    scale = Fraction(1)
    m = []
    for r in fr:
        den = 1
        for x in r:
            den = lcm(den, x.denominator)
        scale /= den
        m.append([int(x * den) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] * scale


def rref(a: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form over ``Fraction``; returns ``(R, pivots)``."""
    m = [[Fraction(x) for x in r] for r in a]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """One exact solution of ``a x = b`` (free variables set to 0), or ``None``."""
    ncols = len(a[0]) if a else 0
    aug = [list(r) + [bv] for r, bv in zip(a, b)]
    if not aug:
        return []
    r, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(r, pivots):
        x[c] = row[-1]
    return x


def nullspace_dim(a: Sequence[Sequence]) -> int:
    return (len(a[0]) if a else 0) - bareiss_rank(a)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(map(Fraction, r)) + e for r, e in zip(a, identity(n))]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def char_poly(a: Matrix) -> List[Fraction]:
    """Coefficients of ``det(t - a)``, index = power of ``t`` (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = zeros(n)
    for k in range(1, n + 1):
        m = scalar_shift(matmul(a, m), coeffs[n - k + 1])
        coeffs[n - k] = -trace(matmul(a, m)) / k
    return coeffs


def centralizer_equations(mu: Matrix) -> Matrix:
    """Coefficient matrix of the linear map ``X -> mu X - X mu`` on ``gl_n``."""
    n = len(mu)
    rows = []
    for i in range(n):
        for j in range(n):
            row = [Fraction(0)] * (n * n)
            for k in range(n):
                row[k * n + j] += mu[i][k]
                row[i * n + k] -= mu[k][j]
            rows.append(row)
    return rows
