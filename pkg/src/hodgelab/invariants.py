"""Polynomial invariants and sequence tests.

Characteristic polynomials come from the Mobius function of the flat
lattice; chromatic polynomials from deletion-contraction (so the two give
an independent cross-check on graphs); reliability polynomials from direct
state enumeration; h-vectors from the binomial transform.  Sequences carry
a semantics tag so that checks with tag-specific meaning (top-heaviness
for Whitney numbers) know when they apply.

All coefficients are exact integers.  Sign conventions: polynomials store
ascending coefficients (index = power of q); derived nonnegative sequences
(e, f, h, w, o) store plain entries (index = subscript).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .matroid import Matroid, MatroidError

_KINDS = {
    "charpoly",
    "reduced_charpoly",
    "chromatic",
    "f_vector",
    "h_vector",
    "w_vector",
    "reliability_h",
    "o_vector",
    "plain",
}


@dataclass(frozen=True)
class IntSequencePoly:
    """Integer coefficient sequence with polynomial or sequence semantics."""

    coeffs: tuple
    kind: str = "plain"

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval_at(self, q: int) -> int:
        """Horner evaluation, for polynomial-tagged sequences."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def descending(self) -> tuple:
        return tuple(reversed(self.coeffs))

    def __repr__(self):
        return f"IntSequencePoly({self.coeffs}, kind={self.kind!r})"


@dataclass(frozen=True)
class SequenceVerdict:
    log_concave: bool
    unimodal: bool
    top_heavy: bool | None
    first_violation: int | None
    used_absolute_values: bool = False


def sequence_checks(seq) -> SequenceVerdict:
    """Log-concavity, unimodality and (for Whitney vectors) top-heaviness.

    Log-concavity is a_i^2 >= a_{i-1} a_{i+1} over interior indices.  A
    zero interior entry therefore passes only when a neighbor vanishes
    too.  Sequences with negative entries (alternating chromatic
    coefficients) are checked on absolute values, flagged in the verdict.
    """
    kind = seq.kind if isinstance(seq, IntSequencePoly) else "plain"
    vals = list(seq)
    used_abs = any(v < 0 for v in vals)
    if used_abs:
        vals = [abs(v) for v in vals]

    log_concave = True
    first_violation = None
    for i in range(1, len(vals) - 1):
        if vals[i] * vals[i] < vals[i - 1] * vals[i + 1]:
            log_concave = False
            first_violation = i
            break

    unimodal = True
    falling = False
    for i in range(1, len(vals)):
        if vals[i] < vals[i - 1]:
            falling = True
        elif vals[i] > vals[i - 1] and falling:
            unimodal = False
            break

    top_heavy = None
    if kind == "w_vector":
        d = len(vals) - 1
        top_heavy = True
        for i in range(len(vals)):
            if 2 * i < d and not (vals[i] <= vals[d - i] and vals[i] <= vals[i + 1]):
                top_heavy = False
                break

    if log_concave and all(v > 0 for v in vals) and not unimodal:
        raise AssertionError("log-concave positive sequence must be unimodal")
    return SequenceVerdict(log_concave, unimodal, top_heavy, first_violation, used_abs)


# ---------------------------------------------------------------------------
# characteristic polynomial


def characteristic_polynomial(m: Matroid) -> IntSequencePoly:
    """chi_M(q) = sum over flats F of mu(empty, F) q^(rank M - rank F).

    Looplessness is guaranteed by the Matroid type; chi_M(1) = 0 is
    asserted as a consistency check on the Mobius recursion.
    """
    lat = m.lattice
    r = m.rank
    coeffs = [0] * (r + 1)
    for i in range(len(lat)):
        coeffs[r - lat.rank_of[i]] += lat.mobius(0, i)
    poly = IntSequencePoly(tuple(coeffs), kind="charpoly")
    if poly.eval_at(1) != 0:
        raise AssertionError("characteristic polynomial does not vanish at 1")
    return poly


def reduced_characteristic(m: Matroid) -> IntSequencePoly:
    """The e-sequence: chi_M(q)/(q-1) = e_0 q^d - e_1 q^(d-1) + ... with
    all e_i >= 0; returned as (e_0, ..., e_d)."""
    chi = characteristic_polynomial(m)
    quot, rem = _divide_by_q_minus_one(chi.coeffs)
    if rem != 0:
        raise AssertionError("chi_M(q) is not divisible by q-1")
    d = len(quot) - 1
    es = []
    for i in range(d + 1):
        signed = quot[d - i]
        e = signed if i % 2 == 0 else -signed
        if e < 0:
            raise AssertionError("reduced characteristic coefficient has wrong sign")
        es.append(e)
    return IntSequencePoly(tuple(es), kind="reduced_charpoly")


def _divide_by_q_minus_one(coeffs: Sequence[int]):
    """Exact synthetic division by (q - 1): returns (quotient, remainder)."""
    qc = [0] * (len(coeffs) - 1)
    carry = 0
    for i in range(len(coeffs) - 1, 0, -1):
        carry += coeffs[i]
        qc[i - 1] = carry
    return qc, coeffs[0] + carry


# ---------------------------------------------------------------------------
# chromatic polynomial


class GraphInputError(ValueError):
    pass


def _normalize_graph(edges) -> tuple:
    edges = [tuple(e) for e in edges]
    if not edges:
        raise GraphInputError("graph needs at least one edge")
    for u, v in edges:
        if u == v:
            raise GraphInputError(f"self-loop at vertex {u}")
    verts = sorted({u for e in edges for u in e})
    vidx = {v: i for i, v in enumerate(verts)}
    return tuple(sorted((min(vidx[u], vidx[v]), max(vidx[u], vidx[v]))) for u, v in edges), len(verts)


def _is_connected(edges, nv: int) -> bool:
    if nv <= 1:
        return True
    adj = {v: set() for v in range(nv)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == nv


def _canonical_key(nv: int, edges: frozenset):
    """Isomorphism-aware memo key for deletion-contraction.

    Any deterministic relabeling is sound (two states with equal keys are
    isomorphic, and the chromatic polynomial is an isomorphism invariant);
    refinement by iterated neighbor-degree signatures plus a bounded
    brute-force minimization inside refinement classes makes the key
    canonical for the small graphs seen here, which is what buys the
    memoization hits.
    """
    from itertools import permutations

    verts = sorted({u for e in edges for u in e})
    deg = {v: 0 for v in verts}
    adj = {v: [] for v in verts}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
        adj[u].append(v)
        adj[v].append(u)
    color = {v: deg[v] for v in verts}
    for _ in range(len(verts)):
        nxt = {v: (color[v], tuple(sorted(color[w] for w in adj[v]))) for v in verts}
        ids = {sig: i for i, sig in enumerate(sorted(set(nxt.values())))}
        new = {v: ids[nxt[v]] for v in verts}
        if new == color:
            break
        color = new
    classes: dict[int, list] = {}
    for v in verts:
        classes.setdefault(color[v], []).append(v)
    sized = sorted(classes.items())
    budget = 1
    for _, cl in sized:
        for k in range(2, len(cl) + 1):
            budget *= k
        if budget > 5040:
            break
    isolated = nv - len(verts)
    if budget > 5040:
        # classes too coarse to canonicalize cheaply; identity labeling
        order = [v for _, cl in sized for v in cl]
        relabel = {v: i for i, v in enumerate(order)}
        key = tuple(sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in edges))
        return (isolated, key)
    best = None

    def rec(idx, assignment):
        nonlocal best
        if idx == len(sized):
            relabel = {}
            i = 0
            for chunk in assignment:
                for v in chunk:
                    relabel[v] = i
                    i += 1
            key = tuple(sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in edges))
            if best is None or key < best:
                best = key
            return
        for perm in permutations(sized[idx][1]):
            rec(idx + 1, assignment + [perm])

    rec(0, [])
    return (isolated, best)


def chromatic_polynomial(edges) -> IntSequencePoly:
    """Chromatic polynomial of a connected graph by deletion-contraction.

    chi_G(q) = chi_{G minus e}(q) - chi_{G/e}(q), with memoization on a
    canonical form of each intermediate (multi)graph; parallel edges
    created by contraction are merged since they do not change proper
    colorings.
    """
    norm, nv = _normalize_graph(edges)
    if not _is_connected(norm, nv):
        raise GraphInputError(
            "graph is disconnected; compute per component and multiply"
        )
    memo: dict = {}

    def rec(nvert: int, eset: frozenset) -> list:
        if not eset:
            out = [0] * (nvert + 1)
            out[nvert] = 1
            return out
        key = _canonical_key(nvert, eset)
        hit = memo.get(key)
        if hit is not None:
            return hit
        u, v = e = min(eset)
        rest = eset - {e}
        deleted = rec(nvert, rest)
        merged = set()
        for a, b in rest:
            a = u if a == v else a
            b = u if b == v else b
            if a != b:
                merged.add((min(a, b), max(a, b)))
        contracted = rec(nvert - 1, frozenset(merged))
        out = [0] * (nvert + 1)
        for i, c in enumerate(deleted):
            out[i] += c
        for i, c in enumerate(contracted):
            out[i] -= c
        memo[key] = out
        return out

    coeffs = rec(nv, frozenset(norm))
    return IntSequencePoly(tuple(coeffs), kind="chromatic")


# ---------------------------------------------------------------------------
# h-vectors and reliability


def h_vector(f, d: int) -> IntSequencePoly:
    """Binomial transform: sum h_i x^i = sum f_i x^i (1-x)^(d-i)."""
    fs = list(f)
    if len(fs) != d + 1:
        raise ValueError(f"f-vector of length {len(fs)} does not match degree {d}")
    hs = [0] * (d + 1)
    for j, fj in enumerate(fs):
        if fj == 0:
            continue
        # expand x^j (1-x)^(d-j)
        c = 1
        for t in range(d - j + 1):
            hs[j + t] += fj * c
            c = -c * (d - j - t) // (t + 1)
    return IntSequencePoly(tuple(hs), kind="h_vector")


def reliability_polynomial(edges):
    """Operational-state counts and the reliability h-vector of a
    connected graph.

    o_i counts i-edge subsets whose spanning subgraph is connected on all
    vertices; R(q) = sum o_i (1-q)^i q^(n-i).  Dividing R by (1-q)^(v-1)
    exactly (nonzero remainder would mean an internal bug) yields
    h_d q^d + ... + h_0 with d = n - v + 1.  Returns (o, h) with
    o = (o_{v-1}, ..., o_n).
    """
    norm, nv = _normalize_graph(edges)
    if not _is_connected(norm, nv):
        raise GraphInputError("reliability needs a connected graph")
    n = len(norm)
    counts = [0] * (n + 1)
    for mask in range(1 << n):
        sub = [norm[i] for i in range(n) if (mask >> i) & 1]
        if len(sub) < nv - 1:
            continue
        if _spans_connected(sub, nv):
            counts[len(sub)] += 1
    # R(q) as ascending coefficients in q
    rpoly = [0] * (n + 1)
    for i, o in enumerate(counts):
        if o == 0:
            continue
        for term_c, term_p in _expand_binom(i, n - i):
            rpoly[term_p] += o * term_c
    quot = rpoly
    for _ in range(nv - 1):
        quot, rem = _divide_by_one_minus_q(quot)
        if rem != 0:
            raise AssertionError("reliability polynomial not divisible by (1-q)^(v-1)")
    d = n - nv + 1
    if len(quot) != d + 1:
        quot = quot + [0] * (d + 1 - len(quot))
    o_seq = IntSequencePoly(tuple(counts[nv - 1 :]), kind="o_vector")
    h_seq = IntSequencePoly(tuple(quot), kind="reliability_h")
    return o_seq, h_seq


def _spans_connected(sub, nv: int) -> bool:
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = nv
    for u, v in sub:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            comps -= 1
    return comps == 1


def _expand_binom(i: int, j: int):
    """Coefficient list of (1-q)^i q^j as (coefficient, power) pairs."""
    c = 1
    for t in range(i + 1):
        yield c, j + t
        c = -c * (i - t) // (t + 1)


def _divide_by_one_minus_q(coeffs):
    """Exact division by (1 - q), ascending coefficients."""
    n = len(coeffs)
    quot = [0] * (n - 1)
    carry = 0
    for i in range(n - 1):
        carry = coeffs[i] + carry
        quot[i] = carry
    rem = coeffs[n - 1] + carry
    return quot, rem


def graph_matroid_charpoly_check(edges) -> bool:
    """Cross-check chi_G(q) = q * chi_{M(G)}(q) for a connected graph."""
    from .matroid import from_graph

    chrom = chromatic_polynomial(edges)
    m = from_graph(edges)
    chi = characteristic_polynomial(m)
    lifted = (0,) + chi.coeffs
    return lifted == chrom.coeffs
