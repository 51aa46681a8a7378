"""Pure numpy / Python implementations of the hot loops.

Used when numba is unavailable or ``HYPERHAM_BACKEND=numpy``. The
vectorisable kernels use numpy; the backtracking searches run on plain
Python ints, which beats per-element numpy scalar access by a wide margin.
"""
from itertools import combinations
from math import comb

import numpy as np


def popcount(x):
    return int(x).bit_count()


def k_subsets(n, r):
    if r == 0:
        return np.zeros(1, dtype=np.uint64)
    if r > n:
        return np.zeros(0, dtype=np.uint64)
    cols = np.array(list(combinations(range(n), r)), dtype=np.uint64)
    masks = np.bitwise_or.reduce(np.left_shift(np.uint64(1), cols), axis=1)
    return np.sort(masks)


def intersection_parity(masks, a_mask):
    return (np.bitwise_count(masks & np.uint64(a_mask)) & 1).astype(np.uint8)


def superset_count(edges, s):
    s = np.uint64(s)
    return int(np.count_nonzero((edges & s) == s))


def _member_matrix(edges, n, k):
    bits = (edges[:, None] >> np.arange(n, dtype=np.uint64)) & np.uint64(1)
    return np.nonzero(bits)[1].reshape(edges.shape[0], k)


def _binom_table(n):
    return np.array([[comb(a, b) for b in range(n + 2)] for a in range(n + 1)],
                    dtype=np.int64)


def subset_degree_counts(edges, n, k, d):
    total = comb(n, d)
    if d == 0:
        counts = np.zeros(1, dtype=np.int64)
        counts[0] = edges.shape[0]
        return counts
    if edges.shape[0] == 0:
        return np.zeros(total, dtype=np.int64)
    binom = _binom_table(n)
    mem = _member_matrix(edges, n, k)
    counts = np.zeros(total, dtype=np.int64)
    for combo in combinations(range(k), d):
        rank = np.zeros(edges.shape[0], dtype=np.int64)
        for j, pos in enumerate(combo):
            rank += binom[mem[:, pos], j + 1]
        counts += np.bincount(rank, minlength=total)
    return counts


def half_split_pairs(edges, k, blocks):
    h = k // 2
    if edges.shape[0] == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    n = int(edges.max()).bit_length()
    mem = _member_matrix(edges, n, k)
    src, dst = [], []
    for combo in combinations(range(k), h):
        left = np.bitwise_or.reduce(
            np.left_shift(np.uint64(1), mem[:, list(combo)].astype(np.uint64)),
            axis=1)
        src.append(np.searchsorted(blocks, left))
        dst.append(np.searchsorted(blocks, edges ^ left))
    # edge-major order, matching the compiled kernel
    return (np.stack(src, axis=1).ravel().astype(np.int64),
            np.stack(dst, axis=1).ravel().astype(np.int64))


def _spend(budget):
    return 3 if budget == 3 else budget - 1


def cycle_search(blocks, adj_ptr, adj_idx, edges, full_mask, t, first,
                 block_parity, a_mask, a_total, feas, even_cap, odd_cap,
                 use_prune, node_limit):
    blk = [int(b) for b in blocks]
    index = {b: i for i, b in enumerate(blk)}
    ptr_l = adj_ptr.tolist()
    nbrs = adj_idx.tolist()
    edge_set = set(edges.tolist())
    par = block_parity.tolist()
    a_mask = int(a_mask)
    full_mask = int(full_mask)
    nodes = 0
    path = [first]
    fb = par[first]

    if use_prune:
        q = (a_total - (blk[first] & a_mask).bit_count()) & 1
        if not feas[t - 1, fb, fb, q, even_cap, odd_cap]:
            return 0, np.full(t, -1, dtype=np.int64), nodes

    def close(used, prev):
        rem = full_mask ^ used
        j = index.get(rem, -1)
        if j > path[1] and (blk[prev] | rem) in edge_set \
                and (rem | blk[first]) in edge_set:
            return j
        return -1

    # explicit stack of (neighbour iterator position, budgets) per depth
    stack = [(ptr_l[first], even_cap, odd_cap)]
    used = blk[first]
    while stack:
        depth = len(path)
        if depth == t - 1:
            nodes += 1
            j = close(used, path[-1])
            if j >= 0:
                out = np.array(path + [j], dtype=np.int64)
                return 1, out, nodes
            used ^= blk[path.pop()]
            stack.pop()
            continue
        pos, be0, bo0 = stack[-1]
        prev = path[-1]
        pb = par[prev]
        end = ptr_l[prev + 1]
        advanced = False
        while pos < end:
            j = nbrs[pos]
            pos += 1
            bj = blk[j]
            if bj & used:
                continue
            be, bo = be0, bo0
            if use_prune:
                jb = par[j]
                if jb == pb:
                    if be == 0:
                        continue
                    be = _spend(be)
                else:
                    if bo == 0:
                        continue
                    bo = _spend(bo)
                q = (a_total - ((used | bj) & a_mask).bit_count()) & 1
                if not feas[t - depth - 1, jb, fb, q, be, bo]:
                    continue
            nodes += 1
            if node_limit > 0 and nodes > node_limit:
                return 2, np.full(t, -1, dtype=np.int64), nodes
            stack[-1] = (pos, be0, bo0)
            path.append(j)
            used |= bj
            stack.append((ptr_l[j], be, bo))
            advanced = True
            break
        if not advanced:
            stack.pop()
            if len(path) > 1:
                used ^= blk[path.pop()]
            else:
                break
    return 0, np.full(t, -1, dtype=np.int64), nodes


def path_search(blocks, adj_ptr, adj_idx, edges, start, end, target, m,
                node_limit):
    blk = [int(b) for b in blocks]
    ptr_l = adj_ptr.tolist()
    nbrs = adj_idx.tolist()
    edge_set = set(edges.tolist())
    target = int(target)
    nodes = 1
    if m == 2:
        found = (blk[start] | blk[end]) in edge_set
        out = np.array([start, end], dtype=np.int64)
        return (1 if found else 0), out, nodes

    def dfs(path, used):
        nonlocal nodes
        if len(path) == m - 1:
            nodes += 1
            return (blk[path[-1]] | blk[end]) in edge_set
        prev = path[-1]
        for pos in range(ptr_l[prev], ptr_l[prev + 1]):
            j = nbrs[pos]
            bj = blk[j]
            if bj & used or bj & ~target:
                continue
            nodes += 1
            if node_limit > 0 and nodes > node_limit:
                raise _LimitHit
            path.append(j)
            if dfs(path, used | bj):
                return True
            path.pop()
        return False

    path = [start]
    try:
        found = dfs(path, blk[start] | blk[end])
    except _LimitHit:
        return 2, np.full(m, -1, dtype=np.int64), nodes
    out = np.full(m, -1, dtype=np.int64)
    out[0] = start
    out[m - 1] = end
    if found:
        out[:len(path)] = path
        return 1, out, nodes
    return 0, out, nodes


class _LimitHit(Exception):
    pass


def pm_search(edges, bucket_ptr, n, k, node_limit):
    e = edges.tolist()
    bp = bucket_ptr.tolist()
    size = n // k
    full = (1 << n) - 1
    nodes = 0
    chosen = []

    def dfs(covered):
        nonlocal nodes
        if len(chosen) == size:
            return True
        free = full ^ covered
        low = (free & -free).bit_length() - 1
        for i in range(bp[low], bp[low + 1]):
            if e[i] & covered:
                continue
            nodes += 1
            if node_limit > 0 and nodes > node_limit:
                raise _LimitHit
            chosen.append(i)
            if dfs(covered | e[i]):
                return True
            chosen.pop()
        return False

    try:
        found = dfs(0)
    except _LimitHit:
        return 2, np.full(size, -1, dtype=np.int64), nodes
    out = np.full(size, -1, dtype=np.int64)
    if found:
        out[:] = chosen
        return 1, out, nodes
    return 0, out, nodes


def three_edges(edges, half):
    e = edges.tolist()
    m = len(e)
    for i in range(m):
        rest = [j for j in range(m) if not e[j] & e[i]]
        for a in range(len(rest)):
            e2 = e[rest[a]]
            for b in range(a + 1, len(rest)):
                c = (e2 & e[rest[b]]).bit_count()
                if c == 0 or c == half:
                    return i, rest[a], rest[b]
    return -1, -1, -1


def bridge_pair(edges, half):
    e = edges.tolist()
    for i in range(len(e)):
        for j in range(i + 1, len(e)):
            c = (e[i] & e[j]).bit_count()
            if c == 0 or c == half:
                return i, j
    return -1, -1


def odd_edge_counts(edges, partitions, chunk=256):
    out = np.zeros(partitions.shape[0], dtype=np.int64)
    for lo in range(0, partitions.shape[0], chunk):
        part = partitions[lo:lo + chunk]
        inter = np.bitwise_count(part[:, None] & edges[None, :]) & 1
        out[lo:lo + chunk] = inter.sum(axis=1)
    return out


def disjoint_pair(edges):
    e = edges.tolist()
    for i in range(len(e)):
        for j in range(i + 1, len(e)):
            if not e[i] & e[j]:
                return i, j
    return -1, -1
