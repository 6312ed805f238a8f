"""Independent dense elimination oracles used to cross-check the kernel.

Deliberately written as textbook dense row reduction over Fractions with
none of the library's sparse machinery, so the two paths share no code.
"""

from fractions import Fraction


def dense_rref(rows):
    """Reduced row echelon form of dense rows; returns (matrix, pivot cols)."""
    mat = [[Fraction(v) for v in row] for row in rows]
    n_rows = len(mat)
    n_cols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, n_rows):
            if mat[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(n_rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return mat, pivots


def oracle_rank(rows):
    if not rows:
        return 0
    return len(dense_rref(rows)[1])


def oracle_nullspace(rows, n_cols):
    """Kernel basis by brute force: one vector per free column."""
    if rows:
        mat, pivots = dense_rref(rows)
    else:
        mat, pivots = [], []
    pivot_set = set(pivots)
    vectors = []
    for f in range(n_cols):
        if f in pivot_set:
            continue
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            if mat[r][f]:
                vec[p] = -mat[r][f]
        vectors.append(tuple(vec))
    return vectors


def oracle_in_span(vector, vectors):
    """Span membership by comparing ranks of stacked rows."""
    base = [list(v) for v in vectors]
    return oracle_rank(base + [list(vector)]) == oracle_rank(base)
