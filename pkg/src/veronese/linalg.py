"""Exact linear algebra over the rationals (dense lists of lists of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import DomainError


def _integer_rows(rows):
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        m = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * m) for x in row])
    return out


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on integer-scaled rows."""
    rows = list(rows)
    if not rows:
        return 0
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DomainError("rows of different lengths")
    a = _integer_rows(rows)
    m = len(a)
    rank = 0
    prev = 1
    for col in range(width):
        pivot = next((i for i in range(rank, m) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, m):
            ai = a[i]
            f = ai[col]
            pr = a[rank]
            # exact by Sylvester's identity
            a[i] = [(p * ai[k] - f * pr[k]) // prev for k in range(width)]
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def identity(n: int) -> list:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(a, b) -> list:
    if not a:
        return []
    if len(a[0]) != len(b):
        raise DomainError("matrix shapes do not match")
    bt = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt] for row in a]


def mat_vec(a, v) -> list:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def vec_mat(v, a) -> list:
    """Row vector times matrix."""
    if not a:
        return []
    return [sum((v[i] * a[i][j] for i in range(len(a)) if v[i] and a[i][j]), Fraction(0)) for j in range(len(a[0]))]


def determinant(a) -> Fraction:
    n = len(a)
    if any(len(r) != n for r in a):
        raise DomainError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def mat_inverse(a) -> list:
    """Gauss-Jordan inverse; raises DomainError on a singular matrix."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise DomainError("inverse of a non-square matrix")
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            raise DomainError("matrix is singular")
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def solve_linear(a, b):
    """Solve ``a x = b``.

    Returns ``(x, nullity)`` with ``x`` a particular solution (free variables
    set to zero), or ``(None, nullity)`` when the system is inconsistent.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    nullity = cols - len(pivots)
    if any(m[i][cols] for i in range(r, rows)):
        return None, nullity
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return x, nullity
