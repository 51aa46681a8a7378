"""numba-compiled hot loops.

Every function here has a twin with the same signature in
``_kernels_numpy``; ``hyperham.kernels`` picks one backend at import time.
Bit masks are ``uint64``; keep every shift/mask operand ``uint64`` or
numba silently promotes to float64.
"""
import numpy as np
from numba import njit

_ONE = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True, inline="always")
def popcount(x):
    x = x - ((x >> _ONE) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True)
def _binom_table(n):
    table = np.zeros((n + 1, n + 2), dtype=np.int64)
    for a in range(n + 1):
        table[a, 0] = 1
        for b in range(1, a + 1):
            table[a, b] = table[a - 1, b - 1] + table[a - 1, b]
    return table


@njit(cache=True)
def k_subsets(n, r):
    binom = _binom_table(n)
    total = binom[n, r]
    out = np.empty(total, dtype=np.uint64)
    if r == 0:
        out[0] = np.uint64(0)
        return out
    # Gosper's hack walks r-subsets in increasing numeric order.
    x = (_ONE << np.uint64(r)) - _ONE
    for i in range(total):
        out[i] = x
        if i + 1 == total:
            break
        c = x & (~x + _ONE)
        rr = x + c
        x = (((rr ^ x) >> np.uint64(2)) // c) | rr
    return out


@njit(cache=True)
def intersection_parity(masks, a_mask):
    out = np.empty(masks.shape[0], dtype=np.uint8)
    for i in range(masks.shape[0]):
        out[i] = popcount(masks[i] & a_mask) & 1
    return out


@njit(cache=True)
def superset_count(edges, s):
    c = 0
    for i in range(edges.shape[0]):
        if edges[i] & s == s:
            c += 1
    return c


@njit(cache=True)
def _members(mask, out):
    c = 0
    v = 0
    while mask:
        if mask & _ONE:
            out[c] = v
            c += 1
        mask >>= _ONE
        v += 1
    return c


@njit(cache=True)
def _position_combos(k, d):
    binom = _binom_table(k)
    total = binom[k, d]
    combos = np.empty((total, d), dtype=np.int64)
    idx = np.arange(d)
    for row in range(total):
        combos[row, :] = idx
        # next combination in lexicographic order
        i = d - 1
        while i >= 0 and idx[i] == k - d + i:
            i -= 1
        if i < 0:
            break
        idx[i] += 1
        for j in range(i + 1, d):
            idx[j] = idx[j - 1] + 1
    return combos


@njit(cache=True)
def subset_degree_counts(edges, n, k, d):
    """Number of edges containing each d-set, indexed by colex rank."""
    binom = _binom_table(n)
    counts = np.zeros(binom[n, d], dtype=np.int64)
    if d == 0:
        counts[0] = edges.shape[0]
        return counts
    combos = _position_combos(k, d)
    mem = np.empty(64, dtype=np.int64)
    for i in range(edges.shape[0]):
        _members(edges[i], mem)
        for row in range(combos.shape[0]):
            rank = 0
            for j in range(d):
                rank += binom[mem[combos[row, j]], j + 1]
            counts[rank] += 1
    return counts


@njit(cache=True)
def _find(sorted_masks, x):
    i = np.searchsorted(sorted_masks, x)
    if i < sorted_masks.shape[0] and sorted_masks[i] == x:
        return i
    return -1


@njit(cache=True)
def half_split_pairs(edges, k, blocks):
    h = k // 2
    combos = _position_combos(k, h)
    per_edge = combos.shape[0]
    src = np.empty(edges.shape[0] * per_edge, dtype=np.int64)
    dst = np.empty(edges.shape[0] * per_edge, dtype=np.int64)
    mem = np.empty(64, dtype=np.int64)
    c = 0
    for i in range(edges.shape[0]):
        e = edges[i]
        _members(e, mem)
        for row in range(per_edge):
            left = np.uint64(0)
            for j in range(h):
                left |= _ONE << np.uint64(mem[combos[row, j]])
            src[c] = _find(blocks, left)
            dst[c] = _find(blocks, e ^ left)
            c += 1
    return src, dst


@njit(cache=True)
def _is_edge(edges, x):
    return _find(edges, x) >= 0


@njit(cache=True)
def _feasible(feas, use_prune, r, last_bit, first_bit, q, be, bo):
    if not use_prune:
        return True
    return feas[r, last_bit, first_bit, q, be, bo]


@njit(cache=True)
def _spend(budget):
    if budget == 3:
        return 3
    return budget - 1


@njit(cache=True)
def cycle_search(blocks, adj_ptr, adj_idx, edges, full_mask, t, first,
                 block_parity, a_mask, a_total, feas, even_cap, odd_cap,
                 use_prune, node_limit):
    """Depth-first search for a cyclic block sequence starting at ``first``.

    Returns ``(status, path, nodes)`` with status 1 = found, 0 = none,
    2 = node limit hit. Candidates are tried in increasing block index so
    the first hit is the lexicographically least sequence with
    ``path[1] < path[t-1]``.
    """
    path = np.full(t, -1, dtype=np.int64)
    ptr = np.zeros(t, dtype=np.int64)
    be_at = np.zeros(t, dtype=np.int64)
    bo_at = np.zeros(t, dtype=np.int64)
    nodes = 0
    path[0] = first
    used = blocks[first]
    fb = np.int64(block_parity[first])
    if use_prune:
        q = (a_total - popcount(used & a_mask)) & 1
        if not feas[t - 1, fb, fb, q, even_cap, odd_cap]:
            return 0, path, nodes
    be_at[0] = even_cap
    bo_at[0] = odd_cap
    depth = 1
    ptr[1] = adj_ptr[first]
    while depth >= 1:
        if depth == t - 1:
            nodes += 1
            prev = path[depth - 1]
            rem = full_mask ^ used
            j = _find(blocks, rem)
            if j > path[1] and _is_edge(edges, blocks[prev] | rem) \
                    and _is_edge(edges, rem | blocks[first]):
                path[depth] = j
                return 1, path, nodes
            depth -= 1
            used ^= blocks[path[depth]]
            continue
        prev = path[depth - 1]
        pb = np.int64(block_parity[prev])
        advanced = False
        while ptr[depth] < adj_ptr[prev + 1]:
            j = adj_idx[ptr[depth]]
            ptr[depth] += 1
            if blocks[j] & used:
                continue
            jb = np.int64(block_parity[j])
            be = be_at[depth - 1]
            bo = bo_at[depth - 1]
            if use_prune:
                if jb == pb:
                    if be == 0:
                        continue
                    be = _spend(be)
                else:
                    if bo == 0:
                        continue
                    bo = _spend(bo)
                q = (a_total - popcount((used | blocks[j]) & a_mask)) & 1
                if not feas[t - depth - 1, jb, fb, q, be, bo]:
                    continue
            nodes += 1
            if node_limit > 0 and nodes > node_limit:
                return 2, path, nodes
            path[depth] = j
            be_at[depth] = be
            bo_at[depth] = bo
            used |= blocks[j]
            depth += 1
            if depth < t - 1:
                ptr[depth] = adj_ptr[j]
            advanced = True
            break
        if not advanced:
            path[depth] = -1
            depth -= 1
            if depth >= 1:
                used ^= blocks[path[depth]]
    return 0, path, nodes


@njit(cache=True)
def path_search(blocks, adj_ptr, adj_idx, edges, start, end, target, m,
                node_limit):
    """Block path ``start = L1, ..., Lm = end`` covering exactly ``target``."""
    path = np.full(m, -1, dtype=np.int64)
    ptr = np.zeros(m, dtype=np.int64)
    nodes = 1
    path[0] = start
    path[m - 1] = end
    if m == 2:
        if _is_edge(edges, blocks[start] | blocks[end]):
            return 1, path, nodes
        return 0, path, nodes
    outside = ~target
    used = blocks[start] | blocks[end]
    depth = 1
    ptr[1] = adj_ptr[start]
    while depth >= 1:
        if depth == m - 1:
            nodes += 1
            if _is_edge(edges, blocks[path[depth - 1]] | blocks[end]):
                return 1, path, nodes
            depth -= 1
            used ^= blocks[path[depth]]
            continue
        prev = path[depth - 1]
        advanced = False
        while ptr[depth] < adj_ptr[prev + 1]:
            j = adj_idx[ptr[depth]]
            ptr[depth] += 1
            if blocks[j] & used or blocks[j] & outside:
                continue
            nodes += 1
            if node_limit > 0 and nodes > node_limit:
                return 2, path, nodes
            path[depth] = j
            used |= blocks[j]
            depth += 1
            if depth < m - 1:
                ptr[depth] = adj_ptr[j]
            advanced = True
            break
        if not advanced:
            path[depth] = -1
            depth -= 1
            if depth >= 1:
                used ^= blocks[path[depth]]
    return 0, path, nodes


@njit(cache=True)
def pm_search(edges, bucket_ptr, n, k, node_limit):
    """Perfect matching by branching on the least uncovered vertex.

    ``edges`` must be grouped by lowest vertex with ``bucket_ptr`` the CSR
    offsets; inside a bucket edges stay in increasing numeric order.
    """
    size = n // k
    chosen = np.full(size, -1, dtype=np.int64)
    ptr = np.zeros(size + 1, dtype=np.int64)
    nodes = 0
    full = (_ONE << np.uint64(n)) - _ONE if n < 64 else ~np.uint64(0)
    covered = np.uint64(0)
    depth = 0
    ptr[0] = bucket_ptr[0]
    while depth >= 0:
        if depth == size:
            return 1, chosen, nodes
        free = full ^ covered
        low = popcount((free & (~free + _ONE)) - _ONE)
        advanced = False
        while ptr[depth] < bucket_ptr[low + 1]:
            i = ptr[depth]
            ptr[depth] += 1
            if edges[i] & covered:
                continue
            nodes += 1
            if node_limit > 0 and nodes > node_limit:
                return 2, chosen, nodes
            chosen[depth] = i
            covered |= edges[i]
            depth += 1
            if depth < size:
                free = full ^ covered
                nlow = popcount((free & (~free + _ONE)) - _ONE)
                ptr[depth] = bucket_ptr[nlow]
            advanced = True
            break
        if not advanced:
            depth -= 1
            if depth >= 0:
                covered ^= edges[chosen[depth]]
                chosen[depth] = -1
    return 0, chosen, nodes


@njit(cache=True)
def three_edges(edges, half):
    m = edges.shape[0]
    for i in range(m):
        e1 = edges[i]
        for j in range(m):
            e2 = edges[j]
            if e2 & e1:
                continue
            for l in range(j + 1, m):
                e3 = edges[l]
                if e3 & e1:
                    continue
                c = popcount(e2 & e3)
                if c == 0 or c == half:
                    return i, j, l
    return -1, -1, -1


@njit(cache=True)
def bridge_pair(edges, half):
    m = edges.shape[0]
    for i in range(m):
        for j in range(i + 1, m):
            c = popcount(edges[i] & edges[j])
            if c == 0 or c == half:
                return i, j
    return -1, -1


@njit(cache=True)
def odd_edge_counts(edges, partitions):
    out = np.zeros(partitions.shape[0], dtype=np.int64)
    for p in range(partitions.shape[0]):
        a = partitions[p]
        c = 0
        for i in range(edges.shape[0]):
            c += popcount(edges[i] & a) & 1
        out[p] = c
    return out


@njit(cache=True)
def disjoint_pair(edges):
    m = edges.shape[0]
    for i in range(m):
        for j in range(i + 1, m):
            if edges[i] & edges[j] == 0:
                return i, j
    return -1, -1
