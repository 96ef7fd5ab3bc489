"""Exact linear algebra over the rationals.

Small dense routines on lists of ``Fraction`` rows. Pivoting is deterministic:
columns are scanned left to right and the first row with a nonzero entry in
the current column is taken as pivot.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = as_matrix(rows)
    if not m:
        return [], []
    n = len(m[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Exact row rank; an empty system has rank 0."""
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    reduced, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def mat_vec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    m = len(b[0]) if b else 0
    out = []
    # skip zero entries; the matrices built here are mostly block-sparse
    for row in a:
        acc = [Fraction(0)] * m
        for x, brow in zip(row, b):
            if x:
                for j, y in enumerate(brow):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def scale(a: Sequence[Sequence], s) -> Matrix:
    return [[x * s for x in row] for row in a]


def add(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(as_matrix(a), identity(n))]
    reduced, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in reduced]


def solve(a: Sequence[Sequence], b: Sequence) -> Vector:
    """Unique solution of a square nonsingular system."""
    inv = inverse(a)
    return mat_vec(inv, b)


def det(a: Sequence[Sequence]) -> Fraction:
    m = as_matrix(a)
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def leading_minors(a: Sequence[Sequence]) -> list[Fraction]:
    """Leading principal minors from one elimination pass without row swaps."""
    m = as_matrix(a)
    n = len(m)
    minors = []
    acc = Fraction(1)
    for c in range(n):
        if m[c][c] == 0:
            # a zero pivot without row swaps means this minor vanishes;
            # fall back to direct determinants for the rest.
            minors.append(Fraction(0))
            minors.extend(det([row[: k + 1] for row in a[: k + 1]]) for k in range(c + 1, n))
            return minors
        acc *= m[c][c]
        minors.append(acc)
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return minors


def is_positive_definite(a: Sequence[Sequence]) -> bool:
    """Sylvester's criterion on a symmetric matrix."""
    if any(a[i][j] != a[j][i] for i in range(len(a)) for j in range(i)):
        return False
    return all(x > 0 for x in leading_minors(a))


def inertia(a: Sequence[Sequence]) -> tuple[int, int, int]:
    """``(positive, negative, zero)`` counts of a symmetric matrix by exact congruence."""
    m = as_matrix(a)
    n = len(m)
    pos = negc = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/column op e_i += e_j makes the (i, i) entry 2 m[i][j] + m[j][j] != 0
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            piv = i
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            for row in m:
                row[k], row[piv] = row[piv], row[k]
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            negc += 1
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] / d
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
        # the matching column operations only touch row k
        for i in range(k + 1, n):
            m[i][k] = Fraction(0)
            m[k][i] = Fraction(0)
        k += 1
    return pos, negc, n - pos - negc
