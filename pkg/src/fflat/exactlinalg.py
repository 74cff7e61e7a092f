"""Exact linear algebra over F_q, F_q[x], F_q(x) and truncated series.

Matrices are plain lists of rows.  Entries are ints (F_q), Poly, Rat,
or LaurentSeries depending on the function.  Everything here is exact:
ranks and determinants over F_q[x] use fraction-free elimination, and
series determinants carry precision floors soundly.
"""

from __future__ import annotations

from .errors import SingularInput
from .ffcore import GF, LaurentSeries, Poly, Rat, poly_lcm


# --- F_q matrices --------------------------------------------------------


def rank_fq(field: GF, rows) -> int:
    """Rank of a matrix over F_q; rows of int-encoded entries."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.inv(m[rank][col])
        m[rank] = [field.mul(inv, v) for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                c = m[r][col]
                m[r] = [field.sub(a, field.mul(c, b)) for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def kernel_vector_fq(field: GF, rows):
    """First right-kernel basis vector of M over F_q, or None if none.

    Deterministic: reduced row echelon form, first free column chosen.
    """
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return None
    ncols = len(m[0])
    pivots = {}  # col -> row
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.inv(m[rank][col])
        m[rank] = [field.mul(inv, v) for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                c = m[r][col]
                m[r] = [field.sub(a, field.mul(c, b)) for a, b in zip(m[r], m[rank])]
        pivots[col] = rank
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    f = free[0]
    vec = [0] * ncols
    vec[f] = 1
    for col, row in pivots.items():
        vec[col] = field.neg(m[row][f])
    return vec


# --- polynomial matrices -------------------------------------------------


def mat_mul_poly(A, B):
    n, k, m = len(A), len(B), len(B[0])
    field = None
    for row in A:
        for p in row:
            field = p.field
            break
        break
    zero = Poly.zero(field)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for t in range(k):
                a = A[i][t]
                b = B[t][j]
                if not (a.is_zero or b.is_zero):
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def det_poly(rows) -> Poly:
    """Determinant over F_q[x] by fraction-free (Bareiss) elimination."""
    n = len(rows)
    field = rows[0][0].field
    if n == 1:
        return rows[0][0]
    m = [list(r) for r in rows]
    sign = 1
    prev = Poly.one(field)
    for k in range(n - 1):
        if m[k][k].is_zero:
            swap = None
            for r in range(k + 1, n):
                if not m[r][k].is_zero:
                    swap = r
                    break
            if swap is None:
                return Poly.zero(field)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                quo, rem = divmod(num, prev)
                assert rem.is_zero, "Bareiss division must be exact"
                m[i][j] = quo
            m[i][k] = Poly.zero(field)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    if sign < 0:
        d = d.scale(field.neg(1))
    return d


def _minor(rows, i, j):
    return [
        [rows[r][c] for c in range(len(rows)) if c != j]
        for r in range(len(rows))
        if r != i
    ]


def adjugate_poly(rows):
    """Adjugate matrix over F_q[x]; adj(M) @ M = det(M) * I."""
    n = len(rows)
    field = rows[0][0].field
    if n == 1:
        return [[Poly.one(field)]]
    neg1 = field.neg(1)
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = det_poly(_minor(rows, i, j))
            if (i + j) % 2:
                c = c.scale(neg1)
            adj[j][i] = c
    return adj


def rank_poly(rows) -> int:
    """Rank over F_q(x) of a polynomial matrix, fraction-free elimination."""
    if not rows or not rows[0]:
        return 0
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if not m[r][col].is_zero:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        piv = m[rank][col]
        for r in range(rank + 1, nrows):
            if not m[r][col].is_zero:
                c = m[r][col]
                m[r] = [a * piv - c * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_rational(rows) -> int:
    """Rank of a matrix over F_q(x).

    Equals the rank over the ambient Laurent series field because the
    entries are rational.  Column scaling clears denominators.
    """
    if not rows or not rows[0]:
        return 0
    field = rows[0][0].field
    ncols = len(rows[0])
    cols = []
    for j in range(ncols):
        dens = [rows[i][j].den for i in range(len(rows))]
        l = Poly.one(field)
        for dpoly in dens:
            l = poly_lcm(l, dpoly)
        col = []
        for i in range(len(rows)):
            e = rows[i][j]
            col.append(e.num * (l // e.den))
        cols.append(col)
    prows = [[cols[j][i] for j in range(ncols)] for i in range(len(rows))]
    return rank_poly(prows)


def det_rat(rows) -> Rat:
    """Determinant of a square matrix over F_q(x)."""
    n = len(rows)
    field = rows[0][0].field
    scale = Rat.from_poly(Poly.one(field))
    cols = []
    for j in range(n):
        l = Poly.one(field)
        for i in range(n):
            l = poly_lcm(l, rows[i][j].den)
        col = [rows[i][j].num * (l // rows[i][j].den) for i in range(n)]
        cols.append(col)
        scale = scale * Rat(Poly.one(field), l)
    prows = [[cols[j][i] for j in range(n)] for i in range(n)]
    return scale * Rat.from_poly(det_poly(prows))


def det_series(rows) -> LaurentSeries:
    """Determinant of a square matrix of Laurent series, cofactor expansion.

    Precision floors propagate through the series arithmetic, so the
    result's knowledge window is sound.
    """
    n = len(rows)
    if n == 1:
        return rows[0][0]
    field = rows[0][0].field
    acc = LaurentSeries.exact_zero(field)
    neg1 = field.neg(1)
    for j in range(n):
        sub = det_series([r[:j] + r[j + 1 :] for r in rows[1:]])
        term = rows[0][j] * sub
        if j % 2:
            term = term.scale(neg1)
        acc = acc + term
    return acc


# --- column reduction of polynomial lattice bases ------------------------


def _col_degree(m, j) -> int:
    return max(row[j].degree for row in m)


def popov_reduce(rows):
    """Column-reduce a nonsingular polynomial matrix.

    Returns (R, U, degs) with R = M @ U, U unimodular (det in F_q^*),
    the leading coefficient matrix of R nonsingular, and columns sorted
    so degs is ascending.  The sum of degs equals deg det M.

    While the leading coefficient matrix L (L[j][i] = coefficient of
    x^(deg of column i) in entry (j, i)) is singular, a kernel vector c
    of L is used to cancel leading terms: with delta = max{deg col_i :
    c_i != 0}, the column of degree delta with c_i != 0 (lowest index on
    ties) is replaced by sum_i c_i x^(delta - deg col_i) col_i, which
    strictly lowers that column's degree.
    """
    n = len(rows)
    field = rows[0][0].field
    if det_poly(rows).is_zero:
        raise SingularInput("matrix has zero determinant, no reduced basis")
    m = [list(r) for r in rows]
    u = [
        [Poly.one(field) if i == j else Poly.zero(field) for j in range(n)]
        for i in range(n)
    ]
    degs = [_col_degree(m, j) for j in range(n)]
    while True:
        lead = [[m[i][j].coeff(degs[j]) for j in range(n)] for i in range(n)]
        c = kernel_vector_fq(field, lead)
        if c is None:
            break
        involved = [j for j in range(n) if c[j]]
        delta = max(degs[j] for j in involved)
        target = min(j for j in involved if degs[j] == delta)
        new_col = [Poly.zero(field) for _ in range(n)]
        new_ucol = [Poly.zero(field) for _ in range(n)]
        for j in involved:
            mono = Poly.monomial(field, c[j], delta - degs[j])
            for i in range(n):
                new_col[i] = new_col[i] + m[i][j] * mono
                new_ucol[i] = new_ucol[i] + u[i][j] * mono
        for i in range(n):
            m[i][target] = new_col[i]
            u[i][target] = new_ucol[i]
        degs[target] = _col_degree(m, target)
    order = sorted(range(n), key=lambda j: (degs[j], j))
    r_sorted = [[m[i][order[j]] for j in range(n)] for i in range(n)]
    u_sorted = [[u[i][order[j]] for j in range(n)] for i in range(n)]
    return r_sorted, u_sorted, [degs[j] for j in order]
