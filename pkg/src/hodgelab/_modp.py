"""Modular-arithmetic certificates for nonsingularity and rank bounds.

For an integer matrix A and a prime p, rank(A mod p) <= rank(A over Q),
with equality generic in p.  A full-rank reduction mod a single prime is
therefore an exact *proof* that A is invertible over the rationals; it is
never used in the other direction.  Inconclusive reductions escalate to
exact elimination in the caller.
"""

import numpy as np

# Primes just under 2**20 so pivot*row products stay well inside int64.
_PRIMES = (1048573, 1048571, 1048559, 1048549)


def rank_modp(rows, p):
    """Rank of an integer row-list matrix reduced mod p (a lower bound on
    the rational rank)."""
    if not rows or not rows[0]:
        return 0
    a = np.array([[x % p for x in row] for row in rows], dtype=np.int64)
    m, n = a.shape
    r = 0
    for c in range(n):
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        factors = a[r + 1 :, c].copy()
        mask = factors != 0
        if mask.any():
            a[r + 1 :][mask] = (a[r + 1 :][mask] - np.outer(factors[mask], a[r])) % p
        r += 1
        if r == m:
            break
    return r


def certify_full_rank(rows, need):
    """True iff the integer matrix provably has rank >= need.

    Tries a few primes; a hit certifies the claim exactly.  A miss proves
    nothing (the caller must fall back to exact arithmetic), so this
    returns False only in the inconclusive case.
    """
    for p in _PRIMES:
        if rank_modp(rows, p) >= need:
            return True
    return False
