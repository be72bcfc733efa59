"""Graded Chow rings of matroids.

The ring of a rank-(d+1) matroid M is the quotient of the polynomial ring
on variables x_F, one per nonempty proper flat F, by

* x_F x_G for incomparable flats F, G, and
* sum_{i in F} x_F - sum_{j in F} x_F for all pairs of elements i, j.

Working presentation.  Internally we adjoin one more variable x_E for the
full ground set and use the equivalent presentation with relations
``sum over all flats F containing i of x_F = 0`` (one per element i); the
hyperplane class alpha = sum_{F ni i} x_F of the public presentation is
then -x_E.  In this presentation the ring has a monomial basis indexed by
chains with rank gaps:

    x_{F_1}^{m_1} ... x_{F_k}^{m_k},   F_1 < ... < F_k (F_k = E allowed),
    1 <= m_t <= rank(F_t) - rank(F_{t-1}) - 1   (F_0 = empty set).

Reduction of an arbitrary chain-supported monomial to this basis walks the
highest bound violation: one factor x_C is eliminated through the relation
at an element i in C chosen off the support flat below C, which rewrites
the monomial as a signed sum of closer-to-admissible ones.  Every step is
an exact ideal relation, so the expressed coordinates are exact whatever
the walk order; the basis property itself is cross-checked in the test
suite against the one-variable-per-proper-flat construction by dense row
reduction, and per instance by Poincare-duality dimension symmetry and the
degree-map consistency check below.

Degrees.  A^d is one-dimensional; the degree map is normalized so that
every monomial x_{F_1} ... x_{F_d} over a maximal chain of nonempty proper
flats maps to 1, and the normalizing constant is verified to agree across
maximal chains at build time (exhaustively up to 6000 chains, sampled with
a fixed seed beyond that).

Everything is exact integer/rational arithmetic; matrices handed to the
verifier are integral.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .matroid import Matroid, MatroidError, _elements, _flat_sort_key


class ChowError(ValueError):
    pass


class SubmodularError(ChowError):
    """Weight function is not strictly submodular; carries a witness pair."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# strictly submodular weight functions


class SubmodularWeights:
    """A function c on all subsets of {0..n-1} with c(empty) = c(E) = 0 and
    c(I1) + c(I2) > c(I1 & I2) + c(I1 | I2) for every incomparable pair.

    Validation runs the local form (over all I and distinct a, b outside
    I), which is equivalent to the pairwise form: a violating local triple
    is a violating incomparable pair (I+a, I+b), and summing local
    inequalities along a standard double induction recovers strictness for
    every incomparable pair.  The witness on failure is that pair.
    """

    __slots__ = ("n", "values")

    def __init__(self, n: int, values):
        self.n = n
        size = 1 << n
        if isinstance(values, (list, tuple)):
            if len(values) != size:
                raise SubmodularError(f"need {size} values, got {len(values)}")
            vals = [Fraction(v) for v in values]
        else:
            vals = [Fraction(0)] * size
            for key, v in values.items():
                mask = key if isinstance(key, int) else sum(1 << e for e in key)
                vals[mask] = Fraction(v)
        self.values = tuple(vals)
        self._validate()

    def _validate(self):
        full = (1 << self.n) - 1
        v = self.values
        if v[0] != 0:
            raise SubmodularError("c(empty set) must be 0")
        if v[full] != 0:
            raise SubmodularError("c(ground set) must be 0")
        n = self.n
        for mask in range(1 << n):
            outside = full & ~mask
            a = 0
            rest = outside
            while rest:
                if rest & 1:
                    b_rest = outside >> (a + 1)
                    b = a + 1
                    while b_rest:
                        if b_rest & 1:
                            lhs = v[mask | (1 << a)] + v[mask | (1 << b)]
                            rhs = v[mask] + v[mask | (1 << a) | (1 << b)]
                            if lhs <= rhs:
                                raise SubmodularError(
                                    "not strictly submodular",
                                    witness=(
                                        _elements(mask | (1 << a)),
                                        _elements(mask | (1 << b)),
                                    ),
                                )
                        b_rest >>= 1
                        b += 1
                rest >>= 1
                a += 1

    def value(self, subset) -> Fraction:
        mask = subset if isinstance(subset, int) else sum(1 << e for e in subset)
        return self.values[mask]

    @classmethod
    def default(cls, n: int) -> "SubmodularWeights":
        """c(I) = |I| (n - |I|): strictly concave in |I|, hence strictly
        submodular (cardinalities add across intersections and unions)."""
        return cls(n, [m.bit_count() * (n - m.bit_count()) for m in range(1 << n)])

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "SubmodularWeights":
        """Default weights scaled by 8 plus integer bumps in [-3, 3].

        The local submodularity margin of the default is exactly 2
        everywhere, so the scaled margin 16 dominates the worst bump
        contribution 4*3; validation still runs in full.
        """
        full = (1 << n) - 1
        vals = []
        for m in range(1 << n):
            base = 8 * m.bit_count() * (n - m.bit_count())
            bump = 0 if m in (0, full) else rng.randint(-3, 3)
            vals.append(base + bump)
        return cls(n, vals)

    def __add__(self, other: "SubmodularWeights") -> "SubmodularWeights":
        if self.n != other.n:
            raise SubmodularError("mismatched ground sets")
        return SubmodularWeights(
            self.n, [a + b for a, b in zip(self.values, other.values)]
        )

    def scaled(self, factor) -> "SubmodularWeights":
        f = Fraction(factor)
        if f <= 0:
            raise SubmodularError("scaling factor must be positive")
        return SubmodularWeights(self.n, [f * v for v in self.values])


# ---------------------------------------------------------------------------
# graded elements


@dataclass(frozen=True)
class GradedElement:
    """Element of one graded piece, as exact coordinates in the computed
    monomial basis of that degree."""

    ring: "ChowRing"
    q: int
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.ring.dim(self.q):
            raise ChowError("coordinate length does not match the graded piece")

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._compat(other)
        return GradedElement(
            self.ring, self.q, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        self._compat(other)
        return GradedElement(
            self.ring, self.q, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return self.ring.multiply(self, other)
        f = Fraction(other)
        return GradedElement(self.ring, self.q, tuple(a * f for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _compat(self, other):
        if other.ring is not self.ring or other.q != self.q:
            raise ChowError("elements live in different graded pieces")


# ---------------------------------------------------------------------------
# the ring


class ChowRing:
    """Chow ring of a loopless matroid, with monomial bases per degree, a
    reduction map from raw flat monomials, multiplication, and the degree
    map on the top graded piece."""

    MAX_EXHAUSTIVE_CHAINS = 6000

    def __init__(self, matroid: Matroid):
        if matroid.rank < 1:
            raise ChowError("need rank at least 1")
        self.matroid = matroid
        self.d = matroid.rank - 1
        self._build_generators()
        self._reduce_cache: dict = {(): {(): 1}}
        self._reducing: set = set()
        self._mult_maps: dict = {}
        self._mult_rows: dict = {}
        self._pairings: dict = {}
        self._enumerate_basis()
        self._normalize_degree()
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 100000))

    # -- construction ---------------------------------------------------

    def _build_generators(self):
        m = self.matroid
        gens = []
        ranks = []
        for r in range(1, m.rank + 1):
            for f in m.flats_by_rank_masks[r]:
                gens.append(f)
                ranks.append(r)
        self.gen_masks = tuple(gens)
        self.gen_ranks = tuple(ranks)
        self.ngens = len(gens)
        self.top_gen = self.ngens - 1  # the full ground set
        self.proper_gens = tuple(range(self.ngens - 1))
        self.gen_index = {f: i for i, f in enumerate(gens)}
        comp = []
        for i, fi in enumerate(gens):
            bits = 0
            for j, fj in enumerate(gens):
                inter = fi & fj
                if inter == fi or inter == fj:
                    bits |= 1 << j
            comp.append(bits)
        self._comparable = tuple(comp)
        elem_gens = []
        for e in range(m.n):
            bits = 0
            for j, fj in enumerate(gens):
                if (fj >> e) & 1:
                    bits |= 1 << j
            elem_gens.append(bits)
        self._elem_gens = tuple(elem_gens)

    def _enumerate_basis(self):
        d = self.d
        by_deg = [[] for _ in range(d + 1)]
        by_deg[0].append(())
        gens_by_min_rank = self.gen_ranks

        def extend(mono, deg, last_rank, last_mask):
            for g in range(self.ngens):
                gr = gens_by_min_rank[g]
                if gr < last_rank + 2:
                    continue
                gm = self.gen_masks[g]
                if last_mask & gm != last_mask or gm == last_mask:
                    continue
                cap = min(d - deg, gr - last_rank - 1)
                stem = mono
                for count in range(1, cap + 1):
                    stem = stem + (g,)
                    by_deg[deg + count].append(stem)
                    extend(stem, deg + count, gr, gm)

        extend((), 0, 0, 0)
        for level in by_deg:
            level.sort()
        self.basis = tuple(tuple(level) for level in by_deg)
        self.basis_index = tuple(
            {mono: i for i, mono in enumerate(level)} for level in self.basis
        )
        self.dims = tuple(len(level) for level in self.basis)
        if self.dims[0] != 1 or self.dims[d] != 1:
            raise AssertionError("graded endpoints must be one-dimensional")
        for q in range(d + 1):
            if self.dims[q] != self.dims[d - q]:
                raise AssertionError(
                    f"basis dimensions break duality symmetry at degree {q}"
                )

    def _normalize_degree(self):
        if self.d == 0:
            self._deg_scale = Fraction(1)
            return
        m = self.matroid
        chains = []

        def walk(chain, level):
            if level > self.d:
                chains.append(tuple(chain))
                return
            prev = chain[-1] if chain else 0
            for f in m.flats_by_rank_masks[level]:
                if prev & f == prev:
                    chain.append(f)
                    walk(chain, level + 1)
                    chain.pop()

        walk([], 1)
        if len(chains) > self.MAX_EXHAUSTIVE_CHAINS:
            rng = random.Random(0)
            chains = rng.sample(chains, self.MAX_EXHAUSTIVE_CHAINS)
        coeff = None
        for chain in chains:
            mono = tuple(sorted(self.gen_index[f] for f in chain))
            red = self._reduce(mono)
            items = [(k, v) for k, v in red.items() if v]
            if len(items) != 1:
                raise AssertionError("maximal chain monomial did not reduce to the top basis monomial")
            _, c = items[0]
            if coeff is None:
                coeff = c
            elif coeff != c:
                raise AssertionError(
                    "degree map is inconsistent across maximal chains"
                )
        if coeff is None or coeff == 0:
            raise AssertionError("degree normalization failed")
        self._deg_scale = Fraction(1, coeff)
        self.n_chains_checked = len(chains)

    # -- basics -----------------------------------------------------------

    def dim(self, q: int) -> int:
        if not 0 <= q <= self.d:
            return 0
        return self.dims[q]

    def zero(self, q: int) -> GradedElement:
        return GradedElement(self, q, (Fraction(0),) * self.dim(q))

    def one(self) -> GradedElement:
        return GradedElement(self, 0, (Fraction(1),))

    def basis_monomials(self, q: int):
        """Basis monomials as tuples of flats (frozensets); the full ground
        set participates as a generator in the working presentation."""
        return tuple(
            tuple(frozenset(_elements(self.gen_masks[g])) for g in mono)
            for mono in self.basis[q]
        )

    # -- reduction engine --------------------------------------------------

    def _admissibility_violations(self, mono):
        """Indices (into the grouped support) of slots violating the rank
        gap bounds; empty tuple means the monomial is a basis element."""
        out = []
        prev_rank = 0
        pos = 0
        k = len(mono)
        gi = 0
        while pos < k:
            g = mono[pos]
            count = 1
            while pos + count < k and mono[pos + count] == g:
                count += 1
            if count > self.gen_ranks[g] - prev_rank - 1:
                out.append(pos)
            prev_rank = self.gen_ranks[g]
            pos += count
            gi += 1
        return out

    def _is_chain(self, mono) -> bool:
        support = sorted(set(mono))
        comp = self._comparable
        for a in range(len(support)):
            bits = comp[support[a]]
            for b in range(a + 1, len(support)):
                if not (bits >> support[b]) & 1:
                    return False
        return True

    def _reduce(self, mono):
        """Coordinates of a chain-supported monomial in the basis, as a
        dict {basis monomial: integer coefficient}."""
        cached = self._reduce_cache.get(mono)
        if cached is not None:
            return cached
        if len(mono) > self.d:
            # no admissible monomials above the top degree
            self._reduce_cache[mono] = {}
            return {}
        if not self._is_chain(mono):
            self._reduce_cache[mono] = {}
            return {}
        violations = self._admissibility_violations(mono)
        if not violations:
            result = {mono: 1}
            self._reduce_cache[mono] = result
            return result
        if mono in self._reducing:
            raise AssertionError(f"reduction cycle at {mono}")
        self._reducing.add(mono)
        try:
            pos = violations[-1]  # highest-rank violating slot
            c_gen = mono[pos]
            rest = mono[:pos] + mono[pos + 1 :]
            pred_mask = 0
            for g in rest:
                gm = self.gen_masks[g]
                if gm != self.gen_masks[c_gen] and gm & self.gen_masks[c_gen] == gm:
                    if gm & pred_mask == pred_mask:
                        pred_mask = gm
            free = self.gen_masks[c_gen] & ~pred_mask
            elem = (free & -free).bit_length() - 1
            support = set(rest)
            comp_bits = ~0
            for g in support:
                comp_bits &= self._comparable[g]
            candidates = self._elem_gens[elem] & comp_bits
            out: dict = {}
            g = 0
            cand = candidates
            while cand:
                if cand & 1 and g != c_gen:
                    sub = self._reduce(_insert(rest, g))
                    for key, val in sub.items():
                        acc = out.get(key, 0) - val
                        if acc:
                            out[key] = acc
                        else:
                            out.pop(key, None)
                cand >>= 1
                g += 1
            self._reduce_cache[mono] = out
            return out
        finally:
            self._reducing.discard(mono)

    def reduce_flat_monomial(self, flats: Iterable) -> GradedElement:
        """Image of a raw monomial over proper flats, as a graded element."""
        idxs = []
        for f in flats:
            mask = f if isinstance(f, int) else sum(1 << e for e in f)
            gi = self.gen_index.get(mask)
            if gi is None or gi == self.top_gen:
                raise ChowError(f"{sorted(_elements(mask))} is not a proper nonempty flat")
            idxs.append(gi)
        mono = tuple(sorted(idxs))
        q = len(mono)
        if q > self.d:
            raise ChowError("monomial degree exceeds the top degree")
        red = self._reduce(mono)
        coords = [Fraction(0)] * self.dim(q)
        index = self.basis_index[q]
        for key, val in red.items():
            coords[index[key]] = Fraction(val)
        return GradedElement(self, q, tuple(coords))

    # -- multiplication ----------------------------------------------------

    def _mult_map(self, g: int, q: int):
        """Columns of multiplication by generator g from degree q to q+1."""
        key = (g, q)
        hit = self._mult_maps.get(key)
        if hit is not None:
            return hit
        if q + 1 > self.d:
            cols = tuple({} for _ in self.basis[q])
        else:
            index = self.basis_index[q + 1]
            cols = []
            for mono in self.basis[q]:
                red = self._reduce(_insert(mono, g))
                cols.append({index[k]: v for k, v in red.items()})
            cols = tuple(cols)
        self._mult_maps[key] = cols
        return cols

    def _mult_rows_view(self, g: int, q: int):
        key = (g, q)
        hit = self._mult_rows.get(key)
        if hit is not None:
            return hit
        cols = self._mult_map(g, q)
        rows: dict = {}
        for j, col in enumerate(cols):
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
        self._mult_rows[key] = rows
        return rows

    def apply_generator(self, g: int, q: int, vec: dict) -> dict:
        """Sparse image of a coordinate dict under multiplication by x_g."""
        cols = self._mult_map(g, q)
        out: dict = {}
        for j, c in vec.items():
            if not c:
                continue
            for i, v in cols[j].items():
                acc = out.get(i, 0) + c * v
                if acc:
                    out[i] = acc
                else:
                    out.pop(i, None)
        return out

    def multiply(self, a: GradedElement, b: GradedElement) -> GradedElement:
        """Bilinear product; degree overflow past the top is rejected."""
        if a.ring is not self or b.ring is not self:
            raise ChowError("elements belong to a different ring")
        q = a.q + b.q
        if q > self.d:
            raise ChowError(f"product degree {q} exceeds top degree {self.d}")
        if len(self.basis[a.q]) >= len(self.basis[b.q]):
            big, small = a, b
        else:
            big, small = b, a
        acc: dict = {}
        for j, coeff in enumerate(small.coords):
            if not coeff:
                continue
            vec = {i: c for i, c in enumerate(big.coords) if c}
            level = big.q
            for g in self.basis[small.q][j]:
                vec = self.apply_generator(g, level, vec)
                level += 1
            for i, v in vec.items():
                acc[i] = acc.get(i, 0) + coeff * v
        coords = [Fraction(0)] * self.dim(q)
        for i, v in acc.items():
            coords[i] = Fraction(v)
        return GradedElement(self, q, tuple(coords))

    # -- degree map ----------------------------------------------------------

    def degree_value(self, e: GradedElement) -> Fraction:
        """The degree isomorphism on A^d, normalized so maximal-chain
        monomials map to 1."""
        if e.q != self.d:
            raise ChowError(f"degree map needs top degree {self.d}, got {e.q}")
        return e.coords[0] * self._deg_scale

    # -- distinguished elements ----------------------------------------------

    def alpha_beta(self):
        """The hyperplane-type classes: alpha_j = sum over proper flats
        containing j, beta_j over proper flats avoiding j.  Both must be
        independent of j; a mismatch is raised, not papered over."""
        alphas = []
        betas = []
        for j in range(self.matroid.n):
            av = self.zero(1)
            bv = self.zero(1)
            for g in self.proper_gens:
                single = self._single_gen_element(g)
                if (self.gen_masks[g] >> j) & 1:
                    av = av + single
                else:
                    bv = bv + single
            alphas.append(av)
            betas.append(bv)
        for j in range(1, self.matroid.n):
            if alphas[j].coords != alphas[0].coords or betas[j].coords != betas[0].coords:
                raise AssertionError(
                    "alpha/beta depend on the reference element; reduction is broken"
                )
        return alphas[0], betas[0]

    def _single_gen_element(self, g: int) -> GradedElement:
        red = self._reduce((g,))
        coords = [Fraction(0)] * self.dim(1)
        index = self.basis_index[1]
        for k, v in red.items():
            coords[index[k]] = Fraction(v)
        return GradedElement(self, 1, tuple(coords))

    # -- pairings (integer internals for the verifier) ------------------------

    def pairing_raw(self, q: int):
        """Integer matrix of top-coefficients deg-pairing A^q x A^(d-q),
        i.e. entry (i, j) is the top coordinate of m_i * m_j; the true
        pairing is this matrix times ``pairing_scale``."""
        hit = self._pairings.get(q)
        if hit is not None:
            return hit
        d = self.d
        nq = self.dims[q]
        ndq = self.dims[d - q]
        rows = [[0] * ndq for _ in range(nq)]
        for j, mono in enumerate(self.basis[d - q]):
            u = {0: 1}
            level = d
            for pos in range(len(mono) - 1, -1, -1):
                level -= 1
                u = self._transpose_apply(mono[pos], level, u)
            for i, v in u.items():
                rows[i][j] = v
        self._pairings[q] = rows
        return rows

    @property
    def pairing_scale(self) -> Fraction:
        return self._deg_scale

    def _transpose_apply(self, g: int, q: int, u: dict) -> dict:
        rows = self._mult_rows_view(g, q)
        out: dict = {}
        for i, c in u.items():
            row = rows.get(i)
            if not row:
                continue
            for j, v in row.items():
                acc = out.get(j, 0) + c * v
                if acc:
                    out[j] = acc
                else:
                    out.pop(j, None)
        return out

    def degree_of_monomial_product(self, monos: Sequence) -> Fraction:
        """deg of a product of basis monomials (must have total degree d)."""
        total = sum(len(m) for m in monos)
        if total != self.d:
            raise ChowError("product degree must be exactly the top degree")
        u = {0: 1}
        level = self.d
        seq = [g for mono in monos for g in mono]
        for g in reversed(seq):
            level -= 1
            u = self._transpose_apply(g, level, u)
        # u is now a functional on A^0
        return Fraction(u.get(0, 0)) * self._deg_scale


def _insert(mono: tuple, g: int) -> tuple:
    lo, hi = 0, len(mono)
    while lo < hi:
        mid = (lo + hi) // 2
        if mono[mid] < g:
            lo = mid + 1
        else:
            hi = mid
    return mono[:lo] + (g,) + mono[lo:]


# ---------------------------------------------------------------------------
# module-level operations in spec terms


def build_chow(m: Matroid) -> ChowRing:
    return ChowRing(m)


def degree(e: GradedElement) -> Fraction:
    return e.ring.degree_value(e)


def multiply(a: GradedElement, b: GradedElement) -> GradedElement:
    return a.ring.multiply(a, b)


def alpha_beta(r: ChowRing):
    return r.alpha_beta()


def kahler_from_submodular(r: ChowRing, c: SubmodularWeights) -> GradedElement:
    """The degree-one class L_c = sum over proper flats F of c(F) x_F."""
    if c.n != r.matroid.n:
        raise ChowError("weight function ground set does not match the matroid")
    out = r.zero(1)
    for g in r.proper_gens:
        w = c.value(r.gen_masks[g])
        if w:
            out = out + w * r._single_gen_element(g)
    return out


def lefschetz_int_weights(r: ChowRing, L: GradedElement):
    """Generator weights of a degree-one element, cleared to integers.

    Degree-one basis monomials are single generators, so L = sum w_g x_g
    with the returned integer weights after multiplying out the common
    denominator (a positive scaling, which no verifier predicate sees).
    """
    if L.q != 1:
        raise ChowError("need a degree-one element")
    denom = 1
    for c in L.coords:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    weights = {}
    for j, c in enumerate(L.coords):
        if c:
            (g,) = r.basis[1][j]
            weights[g] = int(c * denom)
    return weights
