"""Exact dense linear algebra over an arbitrary field.

Matrices are lists of lists of field elements (Fraction, FpElement, ...).
Elements must support +, -, *, /, unary -, == and truthiness (zero is falsy).
Everything here copies its inputs; nothing is mutated in place.
"""

from __future__ import annotations


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = None
            for s in range(k):
                a = Ai[s]
                if not a:
                    continue
                term = a * B[s][j]
                acc = term if acc is None else acc + term
            if acc is None:
                acc = Ai[0] * 0 if k else 0
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A, v):
    return [row[0] for row in mat_mul(A, [[x] for x in v])]


def identity(n, one):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def rref(rows):
    """Reduced row echelon form; returns (new_rows, pivot_columns)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = M[r][c]
        M[r] = [x / inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(rows, one):
    """Basis of the right kernel of the matrix, as a list of vectors."""
    if not rows:
        return []
    ncols = len(rows[0])
    zero = one - one
    M, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -M[r][fc]
        basis.append(v)
    return basis


def solve(A, b):
    """One solution x of A x = b, or None if the system is inconsistent."""
    if not A:
        return []
    ncols = len(A[0])
    zero = b[0] - b[0] if b else None
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    M, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = M[r][ncols]
    return x


def inverse(A, one):
    n = len(A)
    aug = [list(row) + list(e) for row, e in zip(A, identity(n, one))]
    M, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in M]


def in_span(basis_rows, v, one):
    """Whether vector v lies in the row span of basis_rows."""
    if not any(v):
        return True
    if not basis_rows:
        return False
    return rank(list(basis_rows) + [list(v)]) == rank(basis_rows)
