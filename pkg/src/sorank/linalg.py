"""Dense linear algebra over an arbitrary finite field.

All routines take a field object ``F`` exposing ``add``, ``sub``, ``mul``,
``inv`` on integer-encoded elements, and matrices as lists (or tuples) of
rows of such integers.  Everything is plain Gaussian elimination; the
desk-scale sizes this toolkit works at make asymptotics irrelevant.
"""

from __future__ import annotations


def rref(F, rows):
    """Reduced row-echelon form.

    Returns ``(reduced_rows, pivot_cols)``.  Input is not modified.
    """
    add, sub, mul, inv = F.add, F.sub, F.mul, F.inv
    M = [list(r) for r in rows]
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if M[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        M[r], M[pr] = M[pr], M[r]
        piv = inv(M[r][c])
        if piv != 1:
            M[r] = [mul(piv, v) for v in M[r]]
        row_r = M[r]
        for i in range(nrows):
            if i != r and M[i][c]:
                f = M[i][c]
                row_i = M[i]
                for j in range(c, ncols):
                    if row_r[j]:
                        row_i[j] = sub(row_i[j], mul(f, row_r[j]))
        pivots.append(c)
        r += 1
    return M, pivots


def rank(F, rows):
    """Rank via forward elimination (no back-substitution)."""
    sub, mul, inv = F.sub, F.mul, F.inv
    M = [list(r) for r in rows]
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if M[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        M[r], M[pr] = M[pr], M[r]
        row_r = M[r]
        piv_inv = inv(row_r[c])
        for i in range(r + 1, nrows):
            if M[i][c]:
                f = mul(M[i][c], piv_inv)
                row_i = M[i]
                for j in range(c, ncols):
                    if row_r[j]:
                        row_i[j] = sub(row_i[j], mul(f, row_r[j]))
        r += 1
    return r


def is_independent(F, rows):
    return rank(F, rows) == len(rows)


def nullspace(F, rows):
    """Basis of the right kernel {x : rows . x = 0}.

    ``rows`` are equation coefficient vectors; with no equations the
    kernel is the full space, so the caller must pass at least one row
    (possibly zero) to fix the ambient dimension.
    """
    neg = F.neg
    ncols = len(rows[0])
    R, pivots = rref(F, rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = neg(R[i][fc])
        basis.append(v)
    return basis


def solve_in_span(F, basis_rows, target):
    """Coefficients c with sum_i c_i * basis_rows[i] == target, or None."""
    if not basis_rows:
        return [] if not any(target) else None
    k = len(basis_rows)
    ncols = len(target)
    # Augmented system: columns are the basis vectors, last column the target.
    aug = [[basis_rows[i][j] for i in range(k)] + [target[j]] for j in range(ncols)]
    R, pivots = rref(F, aug)
    if k in pivots:
        return None
    coeffs = [0] * k
    for i, pc in enumerate(pivots):
        coeffs[pc] = R[i][k]
    return coeffs


def spans_contain(F, big, small):
    """True iff every row of ``small`` lies in the row span of ``big``."""
    if not small:
        return True
    base = rank(F, big) if big else 0
    return rank(F, list(big) + list(small)) == base


def invert_matrix(F, rows):
    """Inverse of a square matrix; raises ValueError if singular."""
    n = len(rows)
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    R, pivots = rref(F, aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [R[i][n:] for i in range(n)]


def mat_mul(F, A, B):
    add, mul = F.add, F.mul
    n, k = len(A), len(B)
    m = len(B[0]) if k else 0
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(m):
            s = 0
            for t in range(k):
                if Ai[t] and B[t][j]:
                    s = add(s, mul(Ai[t], B[t][j]))
            row.append(s)
        out.append(row)
    return out
