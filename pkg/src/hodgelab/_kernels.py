"""Pure-Python exact linear-algebra kernels.

These are the reference implementations of the hot loops; ``hodgelab._fast``
is a Cython twin with identical signatures and identical outputs.  The
backend module decides which one is active.  Everything here is exact:
Python integers and ``fractions.Fraction`` only, no floating point.

Conventions: matrices are lists of row lists.  Functions that say ``_int``
require integer entries; callers are responsible for clearing denominators
(row scaling for row-space questions, symmetric scaling for inertia
questions).
"""

from fractions import Fraction


def rref_frac(rows):
    """Gauss-Jordan reduced row echelon form over the rationals.

    Takes a list of Fraction rows, returns ``(rref_rows, pivot_cols)``.
    The input list is consumed (rows are copied by the caller if needed).
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, m):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = Fraction(1) / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        rowr = rows[r]
        for i in range(m):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                rowi = rows[i]
                for j in range(c, ncols):
                    if rowr[j]:
                        rowi[j] -= f * rowr[j]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def rank_int(rows):
    """Exact rank of an integer matrix by fraction-free elimination.

    Bareiss-style forward pass with row and column pivot search; entries
    stay integral throughout.  Rows are modified in place.
    """
    m = len(rows)
    if m == 0:
        return 0
    ncols = len(rows[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pr = None
        for i in range(r, m):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rowr = rows[r]
        for i in range(r + 1, m):
            rowi = rows[i]
            f = rowi[c]
            for j in range(c + 1, ncols):
                rowi[j] = (rowi[j] * piv - f * rowr[j]) // prev
            rowi[c] = 0
        prev = piv
        r += 1
        if r == m:
            break
    return r


def bareiss_minors_int(rows):
    """Leading principal minors of a square integer matrix.

    Returns ``(minors, completed)``.  ``minors[k]`` is the determinant of
    the leading (k+1)x(k+1) block.  The fraction-free recurrence needs a
    nonzero pivot at every step; on a zero pivot the walk stops and
    ``completed`` is False (the next minor is exactly 0 and is included).
    Rows are modified in place.
    """
    n = len(rows)
    minors = []
    prev = 1
    for k in range(n):
        piv = rows[k][k]
        minors.append(piv)
        if piv == 0:
            return minors, False
        rowk = rows[k]
        for i in range(k + 1, n):
            rowi = rows[i]
            f = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * piv - f * rowk[j]) // prev
        prev = piv
    return minors, True


def is_pd_int(rows):
    """Sylvester test for positive definiteness of a symmetric integer matrix.

    All leading principal minors strictly positive iff positive definite;
    aborts at the first nonpositive pivot.  Rows are modified in place.
    """
    n = len(rows)
    prev = 1
    for k in range(n):
        piv = rows[k][k]
        if piv <= 0:
            return False
        rowk = rows[k]
        for i in range(k + 1, n):
            rowi = rows[i]
            f = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * piv - f * rowk[j]) // prev
        prev = piv
    return True


def signature_frac(rows):
    """Inertia of a symmetric rational matrix by congruence elimination.

    Diagonal pivots where available; when the whole active diagonal is
    zero, a 2x2 off-diagonal block [[0,a],[a,0]] is split off, which
    contributes one positive and one negative eigenvalue, and its Schur
    complement is formed.  Exact throughout; returns (npos, nneg, nzero).
    Rows are modified in place and must be symmetric.
    """
    n = len(rows)
    npos = nneg = nzero = 0
    active = list(range(n))
    while active:
        piv_pos = None
        for idx, i in enumerate(active):
            if rows[i][i] != 0:
                piv_pos = idx
                break
        if piv_pos is not None:
            i = active.pop(piv_pos)
            p = rows[i][i]
            if p > 0:
                npos += 1
            else:
                nneg += 1
            for r in active:
                f = rows[r][i]
                if f:
                    f = f / p
                    rowi = rows[i]
                    rowr = rows[r]
                    for c in active:
                        if rowi[c]:
                            rowr[c] -= f * rowi[c]
            continue
        # Zero active diagonal: hunt for an off-diagonal entry.
        block = None
        for ai in range(len(active)):
            for aj in range(ai + 1, len(active)):
                if rows[active[ai]][active[aj]] != 0:
                    block = (ai, aj)
                    break
            if block:
                break
        if block is None:
            nzero += len(active)
            break
        ai, aj = block
        j = active.pop(aj)
        i = active.pop(ai)
        a = rows[i][j]
        npos += 1
        nneg += 1
        # Schur complement against [[0,a],[a,0]]: inverse is [[0,1/a],[1/a,0]].
        for r in active:
            u = rows[r][i]
            v = rows[r][j]
            if u == 0 and v == 0:
                continue
            rowi = rows[i]
            rowj = rows[j]
            for c in active:
                rows[r][c] -= (v * rowi[c] + u * rowj[c]) / a
    return npos, nneg, nzero


def matmul_int(a, b):
    """Exact integer matrix product of row-list matrices."""
    m = len(a)
    k = len(b)
    ncols = len(b[0]) if k else 0
    bt = [[b[i][j] for i in range(k)] for j in range(ncols)]
    out = []
    for row in a:
        nz = [(i, x) for i, x in enumerate(row) if x]
        orow = []
        for col in bt:
            s = 0
            for i, x in nz:
                c = col[i]
                if c:
                    s += x * c
            orow.append(s)
        out.append(orow)
    return out


def gram_int(p, w):
    """Product P*W where the result is known symmetric: fills the upper
    triangle and mirrors it.  Raises if the product is not symmetric."""
    n = len(p)
    k = len(w)
    wt = [[w[i][j] for i in range(k)] for j in range(n)]
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        rowi = p[i]
        nz = [(t, x) for t, x in enumerate(rowi) if x]
        for j in range(i, n):
            colj = wt[j]
            s = 0
            for t, x in nz:
                c = colj[t]
                if c:
                    s += x * c
            out[i][j] = s
            out[j][i] = s
    # spot-check symmetry against the untransposed definition
    for i in range(min(n, 3)):
        for j in range(min(n, 3)):
            s = sum(p[i][t] * w[t][j] for t in range(k))
            if s != out[i][j]:
                raise ArithmeticError("gram_int: product is not symmetric")
    return out


def shifted_matrix_int(g, m, t, sign):
    """Return sign*G + t*(M^T M) for integer matrices, used by the
    kernel-restricted definiteness certificate."""
    n = len(g)
    rows = [[sign * x for x in row] for row in g]
    if m:
        k = len(m)
        for i in range(n):
            rowi = rows[i]
            cols_i = [m[r][i] for r in range(k)]
            nz = [(r, x) for r, x in enumerate(cols_i) if x]
            if not nz:
                continue
            for j in range(i, n):
                s = 0
                for r, x in nz:
                    c = m[r][j]
                    if c:
                        s += x * c
                if s:
                    rowi[j] += t * s
                    if i != j:
                        rows[j][i] += t * s
    return rows
