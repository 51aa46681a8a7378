"""Closeness to the parity constructions, set classification and the
forbidden-intersection witness finders.

All threshold comparisons use exact rationals: ``x <= alpha * n**e`` is
tested as ``x * den <= num * n**e``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

import numpy as np

from . import kernels
from .core import Bipartition, Hypergraph, as_mask, members, min_d_degree, popcount
from .errors import BudgetExceeded, InvalidInputError, InvalidQueryError
from .extremal import Variant, parity_graph

EXACT_CLOSENESS_MAX_N = 20


@dataclass(frozen=True)
class Closeness:
    distance: int
    best_partition: Bipartition
    best_variant: Variant
    epsilon_equivalent: Fraction
    upper_bound: bool = False

    def is_close(self, epsilon) -> bool:
        # distance <= eps * n^k  <=>  distance / n^k <= eps
        return self.epsilon_equivalent <= Fraction(epsilon)


def _variant_parity(variant) -> int:
    variant = Variant(variant)
    if variant is Variant.B:
        return 1
    if variant is Variant.BBAR:
        return 0
    raise InvalidInputError("closeness is defined against the b and bbar variants only")


def variant_size(n: int, k: int, a: int, odd: int) -> int:
    """Number of k-sets meeting an a-set in an odd (``odd=1``) or even number of vertices."""
    return sum(comb(a, i) * comb(n - a, k - i) for i in range(odd, k + 1, 2))


def _distances(h: Hypergraph, partitions: np.ndarray, odd: int) -> np.ndarray:
    m = len(h)
    odd_counts = kernels.odd_edge_counts(h.edges, partitions)
    matches = odd_counts if odd else m - odd_counts
    sizes = np.bitwise_count(partitions).astype(np.int64)
    totals = np.array([variant_size(h.n, h.k, int(a), odd) for a in range(h.n + 1)], dtype=object)
    return np.array([m + int(totals[s]) - 2 * int(x) for s, x in zip(sizes, matches)], dtype=np.int64)


def _balanced_sizes(n: int) -> list[int]:
    return sorted({n // 2, (n + 1) // 2})


def _candidate_partitions(n: int, all_sizes: bool) -> np.ndarray:
    sizes = range(n + 1) if all_sizes else _balanced_sizes(n)
    return np.concatenate([kernels.k_subsets(n, a) for a in sizes])


def closeness(h: Hypergraph, variant, mode: str = "exact", all_sizes: bool = False,
              start: Bipartition | None = None) -> Closeness:
    """Minimum number of edge edits turning ``h`` into ``variant`` on some partition.

    ``exact`` enumerates every balanced partition (every partition with
    ``all_sizes``) and refuses ``n > 20``; ``balanced-only`` enumerates the
    balanced partitions without the size cap; ``local-search`` hill-climbs
    from ``start`` and returns an upper bound.
    """
    odd = _variant_parity(variant)
    variant = Variant(variant)
    n, k = h.n, h.k
    if mode == "local-search":
        return _local_search(h, variant, odd, all_sizes, start)
    if mode == "exact":
        if n > EXACT_CLOSENESS_MAX_N:
            raise BudgetExceeded(f"exact closeness enumerates C(n, n/2) partitions; n={n} > "
                                 f"{EXACT_CLOSENESS_MAX_N}")
        parts = _candidate_partitions(n, all_sizes)
    elif mode == "balanced-only":
        parts = _candidate_partitions(n, False)
    else:
        raise InvalidInputError(f"unknown closeness mode {mode!r}")
    dist = _distances(h, parts, odd)
    best = int(np.argmin(dist))
    d = int(dist[best])
    return Closeness(d, Bipartition(n, int(parts[best])), variant, Fraction(d, n ** k), False)


def distance_at(h: Hypergraph, variant, p: Bipartition) -> int:
    """Edit distance from ``h`` to ``variant`` built on the fixed partition ``p``."""
    odd = _variant_parity(variant)
    if p.n != h.n:
        raise InvalidInputError("partition and hypergraph differ in n")
    return int(_distances(h, np.array([p.a_side], dtype=np.uint64), odd)[0])


def _local_search(h, variant, odd, all_sizes, start):
    n, k = h.n, h.k
    a = start.a_side if start is not None else (1 << (n // 2)) - 1
    # Step 0: vertices lying in more minority than majority edges switch sides.
    edges = h.edges.tolist()
    minority = [0] * n
    majority = [0] * n
    for e in edges:
        maj = (popcount(e & a) & 1) == odd
        for v in members(e):
            if maj:
                majority[v] += 1
            else:
                minority[v] += 1
    movers = [v for v in range(n) if minority[v] > majority[v]]
    if all_sizes:
        for v in movers:
            a ^= 1 << v
    else:
        in_a = [v for v in movers if a >> v & 1]
        in_b = [v for v in movers if not a >> v & 1]
        for u, v in zip(in_a, in_b):
            a ^= (1 << u) | (1 << v)
    current = int(_distances(h, np.array([a], dtype=np.uint64), odd)[0])
    while True:
        if all_sizes:
            cands = [a ^ (1 << v) for v in range(n)]
        else:
            ins = [v for v in range(n) if a >> v & 1]
            outs = [v for v in range(n) if not a >> v & 1]
            cands = [a ^ (1 << u) ^ (1 << v) for u in ins for v in outs]
        if not cands:
            break
        arr = np.array(cands, dtype=np.uint64)
        dist = _distances(h, arr, odd)
        i = int(np.argmin(dist))
        if dist[i] >= current:
            break
        a, current = cands[i], int(dist[i])
    return Closeness(current, Bipartition(n, a), variant, Fraction(current, n ** k), True)


# -- good / bad / medium --------------------------------------------------------

class SetClassKind(str, Enum):
    GOOD = "good"
    BAD = "bad"
    MEDIUM = "medium"
    GOOD_AND_BAD = "good-and-bad"


@dataclass(frozen=True)
class SetClass:
    kind: SetClassKind
    alpha: Fraction
    missing: int   # edges of the reference containing S that h lacks
    shared: int    # edges of the reference containing S that h has

    @property
    def good(self) -> bool:
        return self.kind in (SetClassKind.GOOD, SetClassKind.GOOD_AND_BAD)

    @property
    def bad(self) -> bool:
        return self.kind in (SetClassKind.BAD, SetClassKind.GOOD_AND_BAD)


def _at_most(count: int, alpha: Fraction, n: int, exponent: int) -> bool:
    return count * alpha.denominator <= alpha.numerator * n ** exponent


def _check_pair(h: Hypergraph, reference: Hypergraph):
    if (h.n, h.k) != (reference.n, reference.k):
        raise InvalidInputError("hypergraph and reference must share n and k")


def classify(s, h: Hypergraph, reference: Hypergraph, alpha) -> SetClass:
    s = as_mask(s)
    _check_pair(h, reference)
    alpha = Fraction(alpha)
    if alpha < 0:
        raise InvalidQueryError("alpha must be non-negative")
    if popcount(s) >= h.k:
        raise InvalidQueryError(f"|S|={popcount(s)} must be below k={h.k}")
    missing_edges = np.setdiff1d(reference.edges, h.edges, assume_unique=True)
    shared_edges = np.intersect1d(reference.edges, h.edges, assume_unique=True)
    missing = int(kernels.superset_count(missing_edges, np.uint64(s)))
    shared = int(kernels.superset_count(shared_edges, np.uint64(s)))
    exponent = h.k - popcount(s)
    good = _at_most(missing, alpha, h.n, exponent)
    bad = _at_most(shared, alpha, h.n, exponent)
    if good and bad:
        kind = SetClassKind.GOOD_AND_BAD
    elif good:
        kind = SetClassKind.GOOD
    elif bad:
        kind = SetClassKind.BAD
    else:
        kind = SetClassKind.MEDIUM
    return SetClass(kind, alpha, missing, shared)


def alpha_good_blocks(h: Hypergraph, reference: Hypergraph, alpha) -> np.ndarray:
    """Boolean mask over all (k/2)-sets (in mask order): alpha-good w.r.t. ``reference``."""
    _check_pair(h, reference)
    alpha = Fraction(alpha)
    half = h.k // 2
    missing_edges = np.setdiff1d(reference.edges, h.edges, assume_unique=True)
    counts = kernels.subset_degree_counts(missing_edges, h.n, h.k, half)
    limit = alpha.numerator * h.n ** (h.k - half)
    return counts.astype(object) * alpha.denominator <= limit


# -- forbidden intersections ---------------------------------------------------------

def forbidden_intersection_ok(family, k: int) -> bool:
    """True iff no two members meet in 0 or k/2 vertices."""
    masks = [as_mask(f) for f in family]
    for f in masks:
        if popcount(f) != k:
            raise InvalidInputError(f"member {list(members(f))} does not have {k} vertices")
    half = k // 2 if k % 2 == 0 else -1
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            c = popcount(masks[i] & masks[j])
            if c == 0 or c == half:
                return False
    return True


def max_clique(adjacency: list[int], node_limit: int = 0) -> list[int]:
    """Maximum clique of a graph given as neighbour bitsets.

    Branch and bound with a greedy colouring bound; vertices are taken in
    index order so the result is deterministic.
    """
    best: list[int] = []
    nodes = 0

    def colour_bound(cand):
        # greedy colouring of cand; returns vertices with their colour count so far
        order = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(1 << v) & ~adjacency[v]
                rest &= ~(1 << v)
                order.append((v, colour))
        return order

    def expand(clique, cand):
        nonlocal best, nodes
        nodes += 1
        if node_limit and nodes > node_limit:
            raise BudgetExceeded(nodes=nodes)
        for v, colour in reversed(colour_bound(cand)):
            if len(clique) + colour <= len(best):
                return
            clique.append(v)
            nxt = cand & adjacency[v]
            if nxt:
                expand(clique, nxt)
            elif len(clique) > len(best):
                best = sorted(clique)
            clique.pop()
            cand &= ~(1 << v)

    if adjacency:
        expand([], (1 << len(adjacency)) - 1)
    return best


def compatibility_graph(ksets: list[int], k: int) -> list[int]:
    half = k // 2
    adj = [0] * len(ksets)
    for i, a in enumerate(ksets):
        for j in range(i + 1, len(ksets)):
            c = popcount(a & ksets[j])
            if c != 0 and c != half:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def max_forbidden_intersection_family(n: int, k: int, node_limit: int = 0) -> tuple[int, list[int]]:
    """Largest family of k-subsets of [0, n) with no two meeting in 0 or k/2 vertices."""
    if k % 2 or k < 2:
        raise InvalidInputError("k must be even")
    ksets = kernels.k_subsets(n, k).tolist() if k <= n else []
    clique = max_clique(compatibility_graph(ksets, k), node_limit)
    family = sorted(ksets[i] for i in clique)
    return len(family), family


def ekr_lower_bound(n: int, k: int) -> int:
    """Size of the family of all k-sets containing a fixed (k/2 + 1)-set."""
    core = k // 2 + 1
    return comb(n - core, k - core) if n >= k else 0


# -- witness finders ---------------------------------------------------------------

def find_three_edges(h: Hypergraph):
    """Least edges ``(e1, e2, e3)``, ``e2 < e3``, with e1 disjoint from e2 | e3
    and ``|e2 & e3|`` in {0, k/2}; None if there are none."""
    half = h.k // 2 if h.k % 2 == 0 else -1
    i, j, l = kernels.three_edges(h.edges, half)
    if i < 0:
        return None
    e = h.edges
    return int(e[i]), int(e[j]), int(e[l])


def find_bridge_pair(h: Hypergraph, p: Bipartition, side: str):
    """Least pair of ``side``-parity edges meeting in 0 or k/2 vertices."""
    if side not in ("even", "odd"):
        raise InvalidInputError("side must be 'even' or 'odd'")
    par = kernels.intersection_parity(h.edges, np.uint64(p.a_side)).astype(bool)
    cands = np.ascontiguousarray(h.edges[par if side == "odd" else ~par])
    half = h.k // 2 if h.k % 2 == 0 else -1
    i, j = kernels.bridge_pair(cands, half)
    if i < 0:
        return None
    return int(cands[i]), int(cands[j])


def bridge_degree_premise(h: Hypergraph, p: Bipartition, side: str, d: int):
    """Compare the minimum d-degree of ``h`` with the parity construction
    whose edges are of the other side. Returns ``(holds, delta_h, delta_ref)``."""
    if side not in ("even", "odd"):
        raise InvalidInputError("side must be 'even' or 'odd'")
    ref = parity_graph(p, h.k, odd=(side == "even"))
    dh = min_d_degree(h, d).min_degree
    dr = min_d_degree(ref, d).min_degree
    return dh > dr, dh, dr


def is_intersecting(h: Hypergraph) -> bool:
    i, _ = kernels.disjoint_pair(h.edges)
    return i < 0


def is_substar(h: Hypergraph) -> int | None:
    """Least vertex lying in every edge, or None."""
    if h.n == 0:
        return None
    common = (1 << h.n) - 1
    for e in h.edges.tolist():
        common &= e
        if not common:
            return None
    return (common & -common).bit_length() - 1
