"""Exact linear algebra over Q and Z: rational solves, Smith normal form.

Matrices are lists (or tuples) of rows.  Nothing here ever touches a
float; rational work uses fractions.Fraction, lattice work stays in int.
"""
from __future__ import annotations

from fractions import Fraction


class SingularMatrixError(ValueError):
    pass


def identity_matrix(n, one=1):
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(A, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in A]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def rational_inverse(A):
    """Inverse of a square rational matrix by Gauss-Jordan elimination."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def rational_solve(A, b):
    """Solve A x = b exactly; A square and invertible."""
    return mat_vec(rational_inverse(A), [Fraction(x) for x in b])


def solve_in_span(columns, target):
    """Express ``target`` in the independent column family, or return None.

    ``columns`` is a list of equal-length rational vectors; the result is the
    coefficient list when ``target`` lies in their span.
    """
    m, k = len(target), len(columns)
    M = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
         for i in range(m)]
    row = 0
    pivots = []
    for col in range(k):
        piv = next((r for r in range(row, m) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for r in range(m):
            if r != row and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
    for r in range(row, m):
        if M[r][k] != 0:
            return None
    out = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        out[col] = M[r][k]
    return out


def smith_normal_form(A):
    """Smith normal form with transforms: returns (D, U, V), U*A*V = D.

    D is diagonal with nonnegative entries d_1 | d_2 | ...; U and V are
    unimodular.  Deterministic pivot choice (least |entry|, then position),
    so repeated runs on equal input produce identical transforms.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [list(map(int, r)) for r in A]
    U = identity_matrix(rows)
    V = identity_matrix(cols)

    def row_op(i, j, q):  # row_i -= q * row_j
        M[i] = [a - q * b for a, b in zip(M[i], M[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in M:
            r[i] -= q * r[j]
        for r in V:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(rows, cols):
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if M[i][j] != 0 and (best is None or abs(M[i][j]) < best):
                    best = abs(M[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if M[i][t] != 0:
                    q = M[i][t] // M[t][t]
                    row_op(i, t, q)
                    if M[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if M[t][j] != 0:
                    q = M[t][j] // M[t][t]
                    col_op(j, t, q)
                    if M[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        # enforce the divisibility chain
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if M[i][j] % M[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)
            continue
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    D = [[M[i][j] if i == j else 0 for j in range(cols)] for i in range(rows)]
    return D, U, V


def invariant_factors(A):
    """Diagonal of the Smith form, including unit and zero factors."""
    D, _, _ = smith_normal_form(A)
    return tuple(D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)))


def integer_solve(A, b):
    """One integer solution x of A x = b, or None if none exists."""
    D, U, V = smith_normal_form(A)
    rows, cols = len(A), len(A[0])
    ub = mat_vec(U, list(b))
    y = [0] * cols
    for i in range(rows):
        d = D[i][i] if i < cols else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            y[i] = ub[i] // d
    return mat_vec(V, y)
