"""Dense exact linear algebra over any field-like element type.

Elements must support +, -, *, / and be falsy exactly when zero (RatFn,
Fraction, and tower elements all qualify).  Row counts here are desk-scale,
so plain Gauss-Jordan elimination with exact arithmetic is enough.
"""


def _echelon(M, ncols):
    """Gauss-Jordan in place over the first ncols columns; returns the list
    of pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(M)):
            if M[i][c]:
                pr = i
                break
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        pv = M[r][c]
        M[r] = [v / pv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return pivots


def solve(A, b, zero):
    """One solution x of A x = b (free variables set to zero), or None."""
    n = len(A[0]) if A else 0
    M = [list(row) + [b[i]] for i, row in enumerate(A)]
    pivots = _echelon(M, n)
    for i in range(len(pivots), len(M)):
        if M[i][n]:
            return None
    x = [zero] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    return x


def nullspace(A, ncols, zero, one):
    """Basis of the right nullspace of A (list of length-ncols vectors)."""
    M = [list(row) for row in A]
    pivots = _echelon(M, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for i, c in enumerate(pivots):
            v[c] = zero - M[i][free]
        basis.append(v)
    return basis


def determinant(A, zero, one):
    """Determinant by fraction-full elimination (exact field arithmetic)."""
    n = len(A)
    if n == 0:
        return one
    M = [list(row) for row in A]
    det = one
    for c in range(n):
        pr = None
        for i in range(c, n):
            if M[i][c]:
                pr = i
                break
        if pr is None:
            return zero
        if pr != c:
            M[c], M[pr] = M[pr], M[c]
            det = zero - det
        pv = M[c][c]
        det = det * pv
        M[c] = [v / pv for v in M[c]]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det
