"""Matroids presented by their lattice of flats.

A matroid here is a ground set {0, ..., n-1} together with the collection
of flats, which must satisfy:

1. the ground set is a flat;
2. the intersection of two flats is a flat;
3. for every flat F, each element outside F lies in exactly one flat
   covering F (cover = minimal among the flats properly containing F);
4. (looplessness) the empty set is a flat.

Construction goes through a rank oracle (linear, graphic, uniform, minors,
duals) or through an explicit flat list that is validated against the
axioms above.  Flats are bitmasks internally; the public accessors hand
out frozensets.  Ordering convention everywhere: flats sort by rank, then
by their sorted element tuple, which keeps every downstream matrix layout
reproducible.

Scale: ground sets up to a dozen elements.  Ranks are memoized; flats are
generated level by level as closures of flat-plus-one-point sets, which is
obviously correct and plenty fast here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .linalg import Matrix


class MatroidError(ValueError):
    """Invalid matroid input."""


class LoopError(MatroidError):
    """The construction would produce a loop (an element in no basis)."""


class AxiomError(MatroidError):
    """A flat collection violates a flat axiom; carries a witness."""

    def __init__(self, axiom: int, message: str, witness=None):
        super().__init__(f"flat axiom ({axiom}) fails: {message}")
        self.axiom = axiom
        self.witness = witness


def _mask_of(elements: Iterable[int], n: int) -> int:
    m = 0
    for e in elements:
        if not 0 <= e < n:
            raise MatroidError(f"element {e} outside ground set of size {n}")
        m |= 1 << e
    return m


def _elements(mask: int) -> tuple:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _flat_sort_key(mask: int):
    return _elements(mask)


class Matroid:
    """Immutable matroid with a memoized rank oracle and computed flats."""

    __slots__ = ("n", "rank", "full_mask", "provenance", "flats_by_rank_masks", "_rank_fn", "_bases", "_lattice")

    def __init__(self, n: int, rank_fn: Callable[[int], int], provenance: str = "explicit"):
        if n < 1:
            raise MatroidError("ground set must be nonempty")
        self.n = n
        self.full_mask = (1 << n) - 1
        self.provenance = provenance
        self._rank_fn = lru_cache(maxsize=None)(rank_fn)
        self._bases = None
        self._lattice = None
        if self._rank_fn(0) != 0:
            raise MatroidError("rank of the empty set must be 0")
        loops = [e for e in range(n) if self._rank_fn(1 << e) == 0]
        if loops:
            raise LoopError(f"loops are not allowed: elements {loops}")
        self.rank = self._rank_fn(self.full_mask)
        if self.rank < 1:
            raise MatroidError("matroid must have rank at least 1")
        self.flats_by_rank_masks = self._compute_flats()

    # -- rank / closure ------------------------------------------------

    def rank_of(self, subset) -> int:
        return self._rank_fn(self._as_mask(subset))

    def closure_mask(self, mask: int) -> int:
        r = self._rank_fn(mask)
        out = mask
        rest = self.full_mask & ~mask
        e = 0
        while rest >> e:
            if (rest >> e) & 1 and self._rank_fn(mask | (1 << e)) == r:
                out |= 1 << e
            e += 1
        return out

    def closure(self, subset) -> frozenset:
        return frozenset(_elements(self.closure_mask(self._as_mask(subset))))

    def is_independent(self, subset) -> bool:
        mask = self._as_mask(subset)
        return self._rank_fn(mask) == mask.bit_count()

    def _as_mask(self, subset) -> int:
        if isinstance(subset, int):
            if subset < 0 or subset > self.full_mask:
                raise MatroidError("mask out of range")
            return subset
        return _mask_of(subset, self.n)

    def _compute_flats(self):
        levels = [(self.closure_mask(0),)]
        if levels[0][0] != 0:
            raise LoopError("closure of the empty set is nonempty")
        seen = {0}
        current = [0]
        for _ in range(self.rank):
            nxt = set()
            for f in current:
                rest = self.full_mask & ~f
                e = 0
                while rest >> e:
                    if (rest >> e) & 1:
                        nxt.add(self.closure_mask(f | (1 << e)))
                    e += 1
            current = sorted(nxt - seen, key=_flat_sort_key)
            seen.update(current)
            levels.append(tuple(current))
        if levels[-1] != (self.full_mask,):
            raise MatroidError("flat generation did not terminate at the ground set")
        return tuple(levels)

    # -- views -----------------------------------------------------------

    def flats(self, rank: int | None = None):
        """Flats as frozensets, either one rank level or all of them."""
        if rank is None:
            return tuple(
                frozenset(_elements(f)) for level in self.flats_by_rank_masks for f in level
            )
        return tuple(frozenset(_elements(f)) for f in self.flats_by_rank_masks[rank])

    @property
    def lattice(self) -> "FlatLattice":
        if self._lattice is None:
            self._lattice = FlatLattice(self)
        return self._lattice

    def bases(self):
        """All bases, as sorted element tuples (cached)."""
        if self._bases is None:
            r = self.rank
            out = []
            for comb in combinations(range(self.n), r):
                m = 0
                for e in comb:
                    m |= 1 << e
                if self._rank_fn(m) == r:
                    out.append(comb)
            self._bases = tuple(out)
        return self._bases

    def __repr__(self):
        return f"Matroid(n={self.n}, rank={self.rank}, provenance={self.provenance!r})"


class FlatLattice:
    """Indexed view of the lattice of flats.

    ``flats`` lists bitmasks in the global order (rank, then sorted element
    tuple); covers go one rank level up, which is correct because the
    lattice of flats of a matroid is graded.
    """

    def __init__(self, matroid: Matroid):
        self.matroid = matroid
        flats = []
        rank_of = []
        for r, level in enumerate(matroid.flats_by_rank_masks):
            for f in level:
                flats.append(f)
                rank_of.append(r)
        self.flats = tuple(flats)
        self.rank_of = tuple(rank_of)
        self.index = {f: i for i, f in enumerate(flats)}
        covers = []
        for i, f in enumerate(flats):
            r = rank_of[i]
            if r == matroid.rank:
                covers.append(())
            else:
                covers.append(
                    tuple(
                        self.index[g]
                        for g in matroid.flats_by_rank_masks[r + 1]
                        if f & g == f
                    )
                )
        self.upper_covers = tuple(covers)
        self._mobius_cache = {}

    def __len__(self):
        return len(self.flats)

    def leq(self, i: int, j: int) -> bool:
        return self.flats[i] & self.flats[j] == self.flats[i]

    def interval(self, i: int, j: int):
        fi, fj = self.flats[i], self.flats[j]
        return [
            h
            for h, fh in enumerate(self.flats)
            if fi & fh == fi and fh & fj == fh
        ]

    def mobius(self, i: int, j: int) -> int:
        """Mobius function of the interval [i, j]."""
        if not self.leq(i, j):
            raise MatroidError("mobius on an incomparable pair")
        key = (i, j)
        cached = self._mobius_cache.get(key)
        if cached is not None:
            return cached
        if i == j:
            val = 1
        else:
            val = -sum(self.mobius(i, h) for h in self.interval(i, j) if h != j)
        self._mobius_cache[key] = val
        return val


def mobius(lattice: FlatLattice, f, g) -> int:
    """Mobius value between two flats given as element sets."""
    m = lattice.matroid
    fi = lattice.index.get(m._as_mask(f))
    gi = lattice.index.get(m._as_mask(g))
    if fi is None or gi is None:
        raise MatroidError("argument is not a flat")
    return lattice.mobius(fi, gi)


# ---------------------------------------------------------------------------
# constructors


def uniform(r: int, n: int) -> Matroid:
    """Uniform matroid: every set of at most r elements is independent."""
    if not 1 <= r <= n:
        raise MatroidError(f"uniform matroid needs 1 <= r <= n, got r={r}, n={n}")
    return Matroid(n, lambda m: min(m.bit_count(), r), provenance=f"uniform({r},{n})")


def from_graph(edges: Sequence[Sequence[int]]) -> Matroid:
    """Graphic matroid of an (undirected multi)graph; elements are edges.

    A subset of edges is a flat when no edge outside it has its endpoints
    connected inside it; equivalently rank(S) = #vertices - #components of
    the spanning subgraph (V, S).
    """
    edges = [tuple(e) for e in edges]
    if not edges:
        raise MatroidError("graph needs at least one edge")
    for u, v in edges:
        if u == v:
            raise LoopError(f"self-loop at vertex {u}")
    verts = sorted({u for e in edges for u in e})
    vidx = {v: i for i, v in enumerate(verts)}
    nv = len(verts)
    pairs = [(vidx[u], vidx[v]) for u, v in edges]

    def rank_fn(mask: int) -> int:
        parent = list(range(nv))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = nv
        m = mask
        i = 0
        while m:
            if m & 1:
                a, b = find(pairs[i][0]), find(pairs[i][1])
                if a != b:
                    parent[a] = b
                    comps -= 1
            m >>= 1
            i += 1
        return nv - comps

    return Matroid(len(edges), rank_fn, provenance=f"graph({len(verts)}v,{len(edges)}e)")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def from_linear(matrix, p: int | None = None) -> Matroid:
    """Matroid of a vector configuration; elements are the matrix columns.

    Over the rationals by default, over GF(p) when a prime ``p`` is given.
    Zero columns would be loops and are rejected.
    """
    if isinstance(matrix, Matrix):
        rows = matrix.to_lists()
    else:
        rows = [[Fraction(x) if p is None else int(x) for x in row] for row in matrix]
    if not rows or not rows[0]:
        raise MatroidError("matrix needs at least one column")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise MatroidError("ragged matrix")
    if p is not None:
        if not _is_prime(p):
            raise MatroidError(f"{p} is not prime")
        rows = [[int(x) % p for x in row] for row in rows]
    cols = [[row[j] for row in rows] for j in range(ncols)]
    for j, col in enumerate(cols):
        if all(x == 0 for x in col):
            raise LoopError(f"zero column {j} would be a loop")

    def rank_fn(mask: int) -> int:
        sel = [cols[j][:] for j in range(ncols) if (mask >> j) & 1]
        return _column_rank(sel, p)

    tag = f"linear(GF({p}))" if p else "linear(Q)"
    return Matroid(ncols, rank_fn, provenance=tag)


def _column_rank(cols, p: int | None) -> int:
    """Rank of a list of coordinate vectors, over Q or GF(p)."""
    if not cols:
        return 0
    dim = len(cols[0])
    work = [list(c) for c in cols]
    r = 0
    for i in range(dim):
        pivot = None
        for k in range(r, len(work)):
            if work[k][i] != 0:
                pivot = k
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pv = work[r][i]
        inv = pow(pv, p - 2, p) if p else None
        for k in range(r + 1, len(work)):
            f = work[k][i]
            if f:
                if p:
                    mult = f * inv % p
                    work[k] = [(a - mult * b) % p for a, b in zip(work[k], work[r])]
                else:
                    mult = Fraction(f, pv)
                    work[k] = [a - mult * b for a, b in zip(work[k], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def from_flats(n: int, flats: Iterable[Iterable[int]]) -> Matroid:
    """Build a matroid from an explicit flat list, validating the axioms.

    Raises :class:`AxiomError` carrying the violated axiom number and a
    witness.  The rank function is derived from the validated lattice:
    rank(S) = rank of the smallest flat containing S.
    """
    masks = sorted({_mask_of(f, n) for f in flats})
    full = (1 << n) - 1
    mask_set = set(masks)
    if full not in mask_set:
        raise AxiomError(1, "the ground set is not a flat", witness=tuple(range(n)))
    if 0 not in mask_set:
        raise AxiomError(4, "the empty set is not a flat (matroid has loops)", witness=())
    for a, b in combinations(masks, 2):
        if (a & b) not in mask_set:
            raise AxiomError(
                2,
                f"intersection of flats {_elements(a)} and {_elements(b)} is not a flat",
                witness=(_elements(a), _elements(b)),
            )
    # covers by minimality among proper supersets
    covers = {}
    for f in masks:
        ups = [g for g in masks if g != f and f & g == f]
        covers[f] = [g for g in ups if not any(h != g and f & h == f and h & g == h for h in ups)]
    for f in masks:
        outside = full & ~f
        e = 0
        while outside >> e:
            if (outside >> e) & 1:
                hits = [g for g in covers[f] if (g >> e) & 1]
                if len(hits) != 1:
                    raise AxiomError(
                        3,
                        f"element {e} lies in {len(hits)} covers of flat {_elements(f)}",
                        witness=(_elements(f), e, [_elements(g) for g in hits]),
                    )
            e += 1
    # grade the lattice; axiom (3) forces equal-length maximal chains, and
    # the check below turns any surprise into a loud failure
    height = {0: 0}
    order = sorted(masks, key=lambda m: (m.bit_count(), _flat_sort_key(m)))
    for f in order:
        if f == 0:
            continue
        below = [g for g in masks if g != f and g & f == g]
        height[f] = 1 + max(height[g] for g in below)
    for f in masks:
        for g in covers[f]:
            if height[g] != height[f] + 1:
                raise AxiomError(
                    3,
                    "maximal chains of flats have unequal lengths",
                    witness=(_elements(f), _elements(g)),
                )

    def rank_fn(mask: int) -> int:
        best = full
        for g in masks:
            if mask & g == mask and g & best == g:
                best = g
        return height[best]

    m = Matroid(n, rank_fn, provenance="flats")
    # sanity: the declared flats are exactly the computed ones
    computed = {f for level in m.flats_by_rank_masks for f in level}
    if computed != mask_set:
        raise AxiomError(3, "flat list is not closure-consistent", witness=None)
    return m


# ---------------------------------------------------------------------------
# minors and duality


def minor(m: Matroid, delete=(), contract=()) -> Matroid:
    """Deletion/contraction minor on the remaining (relabeled) elements.

    Contractions that would create loops are rejected with the offending
    element, since silently simplifying would change every count downstream.
    """
    dmask = m._as_mask(delete)
    cmask = m._as_mask(contract)
    if dmask & cmask:
        raise MatroidError("delete and contract sets overlap")
    keep = [e for e in range(m.n) if not ((dmask | cmask) >> e) & 1]
    if not keep:
        raise MatroidError("minor has empty ground set")
    ccl = m.closure_mask(cmask)
    looped = [e for e in keep if (ccl >> e) & 1]
    if looped:
        raise LoopError(
            f"contracting {_elements(cmask)} makes elements {looped} loops"
        )
    crank = m._rank_fn(cmask)

    def rank_fn(mask: int) -> int:
        lifted = cmask
        i = 0
        mm = mask
        while mm:
            if mm & 1:
                lifted |= 1 << keep[i]
            mm >>= 1
            i += 1
        return m._rank_fn(lifted) - crank

    return Matroid(len(keep), rank_fn, provenance=f"minor({m.provenance})")


def dual(m: Matroid) -> Matroid:
    """Dual matroid, rank* (S) = |S| - r(E) + r(E - S).

    Coloops of the input would become loops of the dual and are rejected.
    """
    coloops = [
        e for e in range(m.n) if m._rank_fn(m.full_mask & ~(1 << e)) == m.rank - 1
    ]
    if coloops:
        raise LoopError(f"elements {coloops} are coloops; the dual would have loops")

    def rank_fn(mask: int) -> int:
        return mask.bit_count() - m.rank + m._rank_fn(m.full_mask & ~mask)

    return Matroid(m.n, rank_fn, provenance=f"dual({m.provenance})")


# ---------------------------------------------------------------------------
# counting


def f_vector(m: Matroid):
    """Numbers of independent sets by size, f_0 = 1 through f_rank."""
    from .invariants import IntSequencePoly

    counts = [0] * (m.rank + 1)

    def grow(mask: int, size: int, last: int):
        counts[size] += 1
        if size == m.rank:
            return
        for e in range(last + 1, m.n):
            nm = mask | (1 << e)
            if m._rank_fn(nm) == size + 1:
                grow(nm, size + 1, e)

    grow(0, 0, -1)
    return IntSequencePoly(tuple(counts), kind="f_vector")


def whitney_numbers(m: Matroid):
    """w_k = number of rank-k flats."""
    from .invariants import IntSequencePoly

    return IntSequencePoly(
        tuple(len(level) for level in m.flats_by_rank_masks), kind="w_vector"
    )


@dataclass(frozen=True)
class BasisCounts:
    """Exhaustive basis statistics: b bases total, b_i containing element i,
    b_ij containing both i and j (symmetric, diagonal left at 0)."""

    b: int
    b_i: tuple
    b_ij: tuple

    def pair_count(self, i: int, j: int) -> int:
        return self.b_ij[i][j]


def basis_statistics(m: Matroid) -> BasisCounts:
    if m.rank < 2:
        raise MatroidError("basis statistics need rank at least 2")
    n = m.n
    bi = [0] * n
    bij = [[0] * n for _ in range(n)]
    bases = m.bases()
    for base in bases:
        for x, i in enumerate(base):
            bi[i] += 1
            for j in base[x + 1 :]:
                bij[i][j] += 1
                bij[j][i] += 1
    return BasisCounts(
        b=len(bases), b_i=tuple(bi), b_ij=tuple(tuple(r) for r in bij)
    )
