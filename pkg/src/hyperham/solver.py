"""Exhaustive searches for Hamilton cycles, paths and perfect matchings.

Hamilton (k/2)-cycles are searched as cyclic sequences of disjoint
(k/2)-sets ("blocks") whose consecutive unions are edges. The block
containing vertex 0 comes first and the orientation is fixed by requiring
the second block to precede the last one, so every cycle is visited once.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import singledispatch
from itertools import combinations

import numpy as np

from . import kernels
from .core import Bipartition, Hypergraph, as_mask, full_mask, members, popcount
from .errors import BudgetExceeded, InvalidInputError

UNLIMITED = 3  # edge-class budget value meaning "no cap"


@dataclass(frozen=True)
class CycleWitness:
    """A Hamilton l-cycle given by its cyclic vertex order.

    Edge ``i`` is the window of ``k`` consecutive vertices starting at
    position ``i * (k - ell)``.
    """

    hypergraph: Hypergraph = field(repr=False, compare=False)
    order: tuple[int, ...]
    ell: int

    @property
    def step(self) -> int:
        return self.hypergraph.k - self.ell

    @property
    def t(self) -> int:
        return len(self.order) // self.step

    @property
    def blocks(self) -> tuple[int, ...]:
        s = self.step
        return tuple(sum(1 << v for v in self.order[i:i + s]) for i in range(0, len(self.order), s))

    @property
    def edges(self) -> tuple[int, ...]:
        k, s, n = self.hypergraph.k, self.step, len(self.order)
        return tuple(sum(1 << self.order[(i * s + j) % n] for j in range(k)) for i in range(self.t))


@dataclass(frozen=True)
class PathWitness:
    """A (k/2)-path as a sequence of blocks; the ends are the first and last."""

    hypergraph: Hypergraph = field(repr=False, compare=False)
    blocks: tuple[int, ...]

    @property
    def ends(self) -> tuple[int, int]:
        return self.blocks[0], self.blocks[-1]

    @property
    def vertex_mask(self) -> int:
        out = 0
        for b in self.blocks:
            out |= b
        return out


@dataclass(frozen=True)
class MatchingWitness:
    hypergraph: Hypergraph = field(repr=False, compare=False)
    edges: tuple[int, ...]


@dataclass(frozen=True)
class AbsorbingPair:
    """``path`` on 5k/2 vertices plus ``rerouted``, a path on the same
    vertices and ``absorbed`` with the same ends."""

    path: PathWitness
    rerouted: PathWitness
    absorbed: int


@dataclass
class SearchResult:
    decision: str  # "yes", "no" or "undecided"
    witness: object = None
    nodes: int = 0
    wall_ms: int = 0


# -- block structure ---------------------------------------------------------

@dataclass(frozen=True)
class _BlockGraph:
    blocks: np.ndarray     # all (k/2)-sets in increasing mask order
    adj_ptr: np.ndarray    # CSR offsets into adj_idx
    adj_idx: np.ndarray    # neighbours (disjoint, union is an edge), ascending


def block_graph(h: Hypergraph) -> _BlockGraph:
    """The (k/2)-set adjacency of ``h``, cached on the hypergraph."""
    cached = h._half_index
    if cached is not None:
        return cached
    if h.k % 2:
        raise InvalidInputError(f"(k/2)-blocks need even k, got k={h.k}")
    blocks = kernels.k_subsets(h.n, h.k // 2)
    src, dst = kernels.half_split_pairs(h.edges, h.k, blocks)
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    ptr = np.zeros(blocks.shape[0] + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=blocks.shape[0]), out=ptr[1:])
    g = _BlockGraph(blocks, ptr, np.ascontiguousarray(dst))
    h._half_index = g
    return g


def _block_index(g: _BlockGraph, mask: int) -> int:
    i = int(np.searchsorted(g.blocks, np.uint64(mask)))
    if i >= g.blocks.shape[0] or int(g.blocks[i]) != mask:
        raise InvalidInputError(f"{list(members(mask))} is not a block of the right size")
    return i


# -- parity pruning ------------------------------------------------------------

def _class_cap(edges: np.ndarray, t: int) -> int:
    # Two non-consecutive edges of a block cycle are disjoint, so a
    # pairwise-intersecting edge class contributes at most two edges once t >= 4.
    if t < 4:
        return UNLIMITED
    i, _ = kernels.disjoint_pair(edges)
    return 2 if i < 0 else UNLIMITED


def parity_table(allowed: np.ndarray, t: int) -> np.ndarray:
    """Completion feasibility for block parity strings.

    ``feas[r, s, e, q, be, bo]`` says whether ``r`` further bits can follow a
    block of parity ``s`` and close onto a block of parity ``e`` using only
    ``allowed[x, y]`` transitions, at most ``be`` even and ``bo`` odd edges
    (3 = unlimited), with the new bits summing to ``q`` mod 2.
    """
    feas = np.zeros((t + 1, 2, 2, 2, 4, 4), dtype=np.bool_)

    def spend(b):
        return UNLIMITED if b == UNLIMITED else b - 1

    for s in range(2):
        for e in range(2):
            if not allowed[s, e]:
                continue
            for be in range(4):
                for bo in range(4):
                    budget = be if s == e else bo
                    feas[0, s, e, 0, be, bo] = budget > 0
    for r in range(1, t + 1):
        for s in range(2):
            for e in range(2):
                for q in range(2):
                    for be in range(4):
                        for bo in range(4):
                            ok = False
                            for c in range(2):
                                if not allowed[s, c]:
                                    continue
                                if s == c:
                                    if be == 0:
                                        continue
                                    nbe, nbo = spend(be), bo
                                else:
                                    if bo == 0:
                                        continue
                                    nbe, nbo = be, spend(bo)
                                if feas[r - 1, c, e, q ^ c, nbe, nbo]:
                                    ok = True
                                    break
                            feas[r, s, e, q, be, bo] = ok
    return feas


@dataclass(frozen=True)
class _Pruning:
    block_parity: np.ndarray
    a_mask: int
    a_total: int
    feas: np.ndarray
    even_cap: int
    odd_cap: int


def _pruning(h: Hypergraph, g: _BlockGraph, p: Bipartition | None, t: int):
    if p is None:
        dummy = np.zeros((t + 1, 2, 2, 2, 4, 4), dtype=np.bool_)
        return _Pruning(np.zeros(g.blocks.shape[0], dtype=np.uint8), 0, 0, dummy,
                        UNLIMITED, UNLIMITED), False
    par = kernels.intersection_parity(g.blocks, np.uint64(p.a_side))
    allowed = np.zeros((2, 2), dtype=np.bool_)
    src = np.repeat(np.arange(g.blocks.shape[0]), np.diff(g.adj_ptr))
    if src.size:
        pairs = np.unique(par[src] * 2 + par[g.adj_idx])
        for code in pairs.tolist():
            allowed[code >> 1, code & 1] = True
    edge_par = kernels.intersection_parity(h.edges, np.uint64(p.a_side)).astype(bool)
    even_cap = _class_cap(h.edges[~edge_par], t)
    odd_cap = _class_cap(h.edges[edge_par], t)
    return _Pruning(par, p.a_side, p.a_size, parity_table(allowed, t), even_cap, odd_cap), True


# -- Hamilton (k/2)-cycles -------------------------------------------------------

def _check_half_cycle_input(h: Hypergraph):
    k = h.k
    if k % 2:
        raise InvalidInputError(f"(k/2)-cycles need even k, got k={k}")
    if h.n % (k // 2):
        raise InvalidInputError(f"n={h.n} is not a multiple of k/2={k // 2}")
    if h.n < 3 * k // 2:
        raise InvalidInputError(f"n={h.n} < 3k/2: a (k/2)-cycle needs at least three blocks")


def _run_first_blocks(h, p, use_prune, firsts, node_limit):
    """Worker entry point: search the given first blocks in order."""
    g = block_graph(h)
    t = 2 * h.n // h.k
    pr, _ = _pruning(h, g, p, t)
    total = 0
    for f in firsts:
        status, path, nodes = kernels.cycle_search(
            g.blocks, g.adj_ptr, g.adj_idx, h.edges, np.uint64(full_mask(h.n)), t, f,
            pr.block_parity, np.uint64(pr.a_mask), pr.a_total, pr.feas,
            pr.even_cap, pr.odd_cap, use_prune, 0 if node_limit <= 0 else max(node_limit - total, 1))
        total += int(nodes)
        if status == 1:
            return 1, [int(x) for x in path], total
        if status == 2:
            return 2, None, total
    return 0, None, total


def solve_half_cycle(h: Hypergraph, partition: Bipartition | None = None, prune: bool | None = None,
                     deterministic: bool = True, budget_ms: int | None = None,
                     node_limit: int = 0, jobs: int = 1) -> SearchResult:
    """Decide whether ``h`` has a Hamilton (k/2)-cycle.

    ``partition`` enables parity pruning (on by default when given).
    ``budget_ms`` is checked between first-block subtrees and ``node_limit``
    caps the total node count; either one running out yields ``undecided``.
    """
    start = time.perf_counter()
    _check_half_cycle_input(h)
    use_prune = bool(partition is not None and (prune is None or prune))
    g = block_graph(h)
    t = 2 * h.n // h.k
    firsts = [i for i, b in enumerate(g.blocks.tolist()) if b & 1]
    if use_prune:
        pr, _ = _pruning(h, g, partition, t)
        if not any(pr.feas[t - 1, b, b, (pr.a_total - b) & 1, pr.even_cap, pr.odd_cap] for b in (0, 1)):
            return SearchResult("no", None, 0, _ms(start))

    def result(status, path, nodes):
        if status == 1:
            return SearchResult("yes", _cycle_from_blocks(h, [int(g.blocks[i]) for i in path]),
                                nodes, _ms(start))
        if status == 2:
            return SearchResult("undecided", None, nodes, _ms(start))
        return SearchResult("no", None, nodes, _ms(start))

    if jobs > 1 and len(firsts) > 1:
        return result(*_parallel_half_cycle(h, partition, use_prune, firsts, node_limit, jobs,
                                            deterministic))

    total = 0
    for f in firsts:
        if budget_ms is not None and _ms(start) > budget_ms:
            return SearchResult("undecided", None, total, _ms(start))
        remaining = 0 if node_limit <= 0 else node_limit - total
        status, path, nodes = _run_first_blocks(h, partition if use_prune else None, use_prune,
                                                [f], remaining)
        total += nodes
        if status != 0:
            return result(status, path, total)
    return SearchResult("no", None, total, _ms(start))


def _parallel_half_cycle(h, p, use_prune, firsts, node_limit, jobs, deterministic):
    chunks = [firsts[i::jobs] for i in range(jobs)]
    chunks = [sorted(c) for c in chunks if c]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_first_blocks, h, p if use_prune else None, use_prune, c, node_limit)
                   for c in chunks]
        outcomes = [f.result() for f in futures]
    total = sum(o[2] for o in outcomes)
    found = [o for o in outcomes if o[0] == 1]
    if found:
        # least first block wins so the answer matches the sequential search
        best = min(found, key=lambda o: o[1]) if deterministic else found[0]
        return 1, best[1], total
    if any(o[0] == 2 for o in outcomes):
        return 2, None, total
    return 0, None, total


def _ms(start):
    return int((time.perf_counter() - start) * 1000)


def _cycle_from_blocks(h: Hypergraph, blocks) -> CycleWitness:
    order = tuple(v for b in blocks for v in members(b))
    return CycleWitness(h, order, h.k // 2)


def _raise_or_return(res: SearchResult):
    if res.decision == "undecided":
        raise BudgetExceeded(nodes=res.nodes)
    return res.witness


def find_hamilton_half_cycle(h: Hypergraph, partition: Bipartition | None = None, **options):
    """Witness of a Hamilton (k/2)-cycle, or None; see ``solve_half_cycle``."""
    return _raise_or_return(solve_half_cycle(h, partition, **options))


# -- general l-cycles (reference implementation) ------------------------------------

def solve_l_cycle(h: Hypergraph, ell: int, reference: bool = False, **options) -> SearchResult:
    k, n = h.k, h.n
    if not 1 <= ell < k:
        raise InvalidInputError(f"ell={ell} outside [1, k-1]")
    step = k - ell
    if n % step:
        raise InvalidInputError(f"k - ell = {step} does not divide n={n}")
    if n < 2 * k - ell:
        raise InvalidInputError(f"n={n} too small for an {ell}-cycle of {k}-sets")
    if 2 * ell == k and not reference:
        return solve_half_cycle(h, **options)
    start = time.perf_counter()
    budget_ms = options.get("budget_ms")
    edge_set = h.edge_set
    seq: list[int] = []
    nodes = 0

    def window(i):
        return sum(1 << seq[(i * step + j) % n] for j in range(k))

    def dfs(used):
        nonlocal nodes
        pos = len(seq)
        if pos == n:
            t = n // step
            return all(window(i) in edge_set for i in range(t) if i * step + k > n)
        if pos == step and 0 not in seq:
            return False
        if budget_ms is not None and nodes % 4096 == 0 and _ms(start) > budget_ms:
            raise BudgetExceeded(nodes=nodes)
        for v in range(n):
            if used >> v & 1:
                continue
            nodes += 1
            seq.append(v)
            end = pos + 1
            ok = True
            if end >= k and (end - k) % step == 0:
                ok = window((end - k) // step) in edge_set
            if ok and dfs(used | 1 << v):
                return True
            seq.pop()
        return False

    try:
        found = dfs(0)
    except BudgetExceeded as exc:
        return SearchResult("undecided", None, exc.nodes, _ms(start))
    if found:
        return SearchResult("yes", CycleWitness(h, tuple(seq), ell), nodes, _ms(start))
    return SearchResult("no", None, nodes, _ms(start))


def find_hamilton_l_cycle(h: Hypergraph, ell: int, reference: bool = False, **options):
    return _raise_or_return(solve_l_cycle(h, ell, reference=reference, **options))


# -- perfect matchings ----------------------------------------------------------

def solve_perfect_matching(h: Hypergraph, node_limit: int = 0, **_ignored) -> SearchResult:
    start = time.perf_counter()
    if h.n % h.k:
        raise InvalidInputError(f"k={h.k} does not divide n={h.n}")
    if h.n == 0:
        return SearchResult("yes", MatchingWitness(h, ()), 0, 0)
    e = h.edges
    low = np.bitwise_count((e & (~e + np.uint64(1))) - np.uint64(1)).astype(np.int64)
    order = np.argsort(low, kind="stable")
    grouped = np.ascontiguousarray(e[order])
    ptr = np.zeros(h.n + 1, dtype=np.int64)
    np.cumsum(np.bincount(low, minlength=h.n), out=ptr[1:])
    status, chosen, nodes = kernels.pm_search(grouped, ptr, h.n, h.k, node_limit)
    if status == 1:
        w = MatchingWitness(h, tuple(int(grouped[i]) for i in chosen))
        return SearchResult("yes", w, int(nodes), _ms(start))
    return SearchResult("undecided" if status == 2 else "no", None, int(nodes), _ms(start))


def find_perfect_matching(h: Hypergraph, **options):
    return _raise_or_return(solve_perfect_matching(h, **options))


# -- (k/2)-paths, connecting sets, absorbers -----------------------------------------

def solve_half_path(h: Hypergraph, start, end, allowed, node_limit: int = 0, **_ignored) -> SearchResult:
    t0 = time.perf_counter()
    if h.k % 2:
        raise InvalidInputError("(k/2)-paths need even k")
    half = h.k // 2
    s, e, allowed = as_mask(start), as_mask(end), as_mask(allowed)
    if popcount(s) != half or popcount(e) != half:
        raise InvalidInputError(f"ends must be {half}-sets")
    if s & e:
        raise InvalidInputError("ends must be disjoint")
    if (s | e) & ~allowed:
        raise InvalidInputError("allowed vertices must contain both ends")
    if allowed >> h.n:
        raise InvalidInputError("allowed vertices must lie in [0, n)")
    inner = popcount(allowed) - 2 * half
    if inner % half:
        raise InvalidInputError(f"{inner} interior vertices is not a multiple of k/2={half}")
    g = block_graph(h)
    m = popcount(allowed) // half
    status, path, nodes = kernels.path_search(g.blocks, g.adj_ptr, g.adj_idx, h.edges,
                                              _block_index(g, s), _block_index(g, e),
                                              np.uint64(allowed), m, node_limit)
    if status == 1:
        w = PathWitness(h, tuple(int(g.blocks[i]) for i in path))
        return SearchResult("yes", w, int(nodes), _ms(t0))
    return SearchResult("undecided" if status == 2 else "no", None, int(nodes), _ms(t0))


def find_half_path(h: Hypergraph, start, end, allowed, **options):
    return _raise_or_return(solve_half_path(h, start, end, allowed, **options))


def count_connecting_sets(h: Hypergraph, s, t, size: int | None = None) -> int:
    """Number of ``size``-sets C such that h[s | C | t] has a (k/2)-path with ends s, t."""
    half = h.k // 2
    size = 3 * half if size is None else size
    if size % half:
        raise InvalidInputError(f"size={size} is not a multiple of k/2={half}")
    s, t = as_mask(s), as_mask(t)
    rest = [v for v in range(h.n) if not (s | t) >> v & 1]
    count = 0
    for combo in combinations(rest, size):
        c = sum(1 << v for v in combo)
        if solve_half_path(h, s, t, s | c | t).decision == "yes":
            count += 1
    return count


def _block_paths(g: _BlockGraph, length: int, forbidden: int):
    """All block paths of ``length`` blocks avoiding ``forbidden``, lexicographically."""
    blocks = g.blocks.tolist()
    ptr = g.adj_ptr.tolist()
    nbrs = g.adj_idx.tolist()
    path: list[int] = []

    def extend(used):
        if len(path) == length:
            yield tuple(path)
            return
        prev = path[-1]
        for pos in range(ptr[prev], ptr[prev + 1]):
            j = nbrs[pos]
            if blocks[j] & used:
                continue
            path.append(j)
            yield from extend(used | blocks[j])
            path.pop()

    for i, b in enumerate(blocks):
        if b & forbidden or ptr[i] == ptr[i + 1]:
            continue
        path.append(i)
        yield from extend(forbidden | b)
        path.pop()


def find_absorbing_path(h: Hypergraph, x, node_limit: int = 0) -> AbsorbingPair | None:
    """Least 5-block path P avoiding x whose vertices plus x carry a path with P's ends."""
    half = h.k // 2
    x = as_mask(x)
    if h.k % 2 or popcount(x) != half:
        raise InvalidInputError(f"x must be a {half}-set and k even")
    g = block_graph(h)
    blocks = g.blocks.tolist()
    tried = 0
    for p in _block_paths(g, 5, x):
        tried += 1
        if node_limit and tried > node_limit:
            raise BudgetExceeded(nodes=tried)
        vertex_mask = x
        for i in p:
            vertex_mask |= blocks[i]
        status, q, _ = kernels.path_search(g.blocks, g.adj_ptr, g.adj_idx, h.edges, p[0], p[-1],
                                           np.uint64(vertex_mask), 6, 0)
        if status == 1:
            return AbsorbingPair(PathWitness(h, tuple(blocks[i] for i in p)),
                                 PathWitness(h, tuple(blocks[int(i)] for i in q)), x)
    return None


def split_into_matchings(cycle: CycleWitness) -> tuple[MatchingWitness, MatchingWitness]:
    """Edges at even and at odd positions of a (k/2)-cycle with an even number of edges."""
    if 2 * cycle.ell != cycle.hypergraph.k or cycle.t % 2:
        raise InvalidInputError("only (k/2)-cycles with an even number of edges split into matchings")
    edges = cycle.edges
    return (MatchingWitness(cycle.hypergraph, edges[0::2]),
            MatchingWitness(cycle.hypergraph, edges[1::2]))


# -- verification ---------------------------------------------------------------

def _blocks_ok(h: Hypergraph, blocks, size) -> bool:
    seen = 0
    for b in blocks:
        if popcount(b) != size or b & seen or b >> h.n:
            return False
        seen |= b
    return True


def verify_cycle(w: CycleWitness) -> bool:
    if not isinstance(w, CycleWitness):
        raise TypeError(f"expected CycleWitness, got {type(w).__name__}")
    h = w.hypergraph
    n, k = h.n, h.k
    if not 1 <= w.ell < k or sorted(w.order) != list(range(n)):
        return False
    step = k - w.ell
    if n % step or n < 2 * k - w.ell or w.t < 3:
        return False
    edges = w.edges
    if len(set(edges)) != len(edges) or not all(e in h.edge_set for e in edges):
        return False
    return all(popcount(edges[i] & edges[(i + 1) % len(edges)]) == w.ell for i in range(len(edges)))


def verify_path(w: PathWitness) -> bool:
    if not isinstance(w, PathWitness):
        raise TypeError(f"expected PathWitness, got {type(w).__name__}")
    h = w.hypergraph
    if h.k % 2 or len(w.blocks) < 2 or not _blocks_ok(h, w.blocks, h.k // 2):
        return False
    return all((a | b) in h.edge_set for a, b in zip(w.blocks, w.blocks[1:]))


def verify_matching(w: MatchingWitness) -> bool:
    if not isinstance(w, MatchingWitness):
        raise TypeError(f"expected MatchingWitness, got {type(w).__name__}")
    h = w.hypergraph
    if h.k == 0 or len(w.edges) != h.n // h.k or h.n % h.k:
        return False
    covered = 0
    for e in w.edges:
        if e & covered or e not in h.edge_set:
            return False
        covered |= e
    return covered == full_mask(h.n)


def verify_absorbing(w: AbsorbingPair) -> bool:
    if not isinstance(w, AbsorbingPair):
        raise TypeError(f"expected AbsorbingPair, got {type(w).__name__}")
    p, q = w.path, w.rerouted
    half = p.hypergraph.k // 2
    return (verify_path(p) and verify_path(q) and len(p.blocks) == 5
            and popcount(w.absorbed) == half and not p.vertex_mask & w.absorbed
            and q.vertex_mask == p.vertex_mask | w.absorbed and q.ends == p.ends)


@singledispatch
def verify(witness) -> bool:
    """Re-check a witness from scratch against its hypergraph."""
    raise TypeError(f"no verifier for {type(witness).__name__}")


verify.register(CycleWitness, verify_cycle)
verify.register(PathWitness, verify_path)
verify.register(MatchingWitness, verify_matching)
verify.register(AbsorbingPair, verify_absorbing)
