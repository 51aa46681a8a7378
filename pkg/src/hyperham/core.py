"""Hypergraph representation, degree queries, parity and edit distance.

A vertex set is a plain ``int`` bitmask over ``[0, n)`` with ``n <= 64``;
bit ``v`` set means vertex ``v`` is a member. Numeric order of masks is the
colex order of sets, which is the canonical order used everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Iterable

import numpy as np

from . import kernels
from .errors import IncompatibleHypergraphsError, InvalidInputError, InvalidQueryError

MAX_VERTICES = 64
# refuse to allocate degree tables larger than this
MAX_DEGREE_TABLE = 200_000_000

VertexSet = int


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        v = int(v)
        if v < 0 or v >= MAX_VERTICES:
            raise InvalidInputError(f"vertex {v} outside [0, {MAX_VERTICES})")
        mask |= 1 << v
    return mask


def as_mask(s) -> VertexSet:
    """Accept a bitmask or an iterable of vertices."""
    if isinstance(s, (int, np.integer)):
        return int(s)
    return vertex_set(s)


def members(mask: VertexSet) -> tuple[int, ...]:
    out = []
    v = 0
    mask = int(mask)
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(mask: VertexSet) -> int:
    return int(mask).bit_count()


def full_mask(n: int) -> VertexSet:
    return (1 << n) - 1


def colex_unrank(rank: int, d: int) -> VertexSet:
    mask = 0
    for i in range(d, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        rank -= comb(c, i)
        mask |= 1 << c
    return mask


def colex_rank(mask: VertexSet) -> int:
    return sum(comb(v, i + 1) for i, v in enumerate(members(mask)))


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


class Hypergraph:
    """Immutable k-uniform hypergraph on vertices ``0..n-1``.

    Edges are stored once, as a sorted ``uint64`` array of bitmasks.
    """

    __slots__ = ("n", "k", "_edges", "_edge_set", "_half_index")

    def __init__(self, n: int, k: int, edges=()):
        if not 0 <= n <= MAX_VERTICES:
            raise InvalidInputError(f"n={n} outside supported range [0, {MAX_VERTICES}]")
        if not 1 <= k:
            raise InvalidInputError(f"uniformity k={k} must be positive")
        if isinstance(edges, np.ndarray):
            arr = edges.astype(np.uint64, copy=False)
        else:
            arr = np.fromiter((as_mask(e) for e in edges), dtype=np.uint64)
        arr = np.unique(arr)
        if arr.size:
            sizes = np.bitwise_count(arr)
            bad = np.nonzero(sizes != k)[0]
            if bad.size:
                e = int(arr[bad[0]])
                raise InvalidInputError(f"edge {list(members(e))} has {popcount(e)} vertices, expected {k}")
            if n < 64 and int(arr[-1]) >> n:
                raise InvalidInputError(f"edge {list(members(int(arr[-1])))} uses a vertex >= n={n}")
        arr.setflags(write=False)
        self.n = n
        self.k = k
        self._edges = arr
        self._edge_set = None
        self._half_index = None

    @classmethod
    def complete(cls, n: int, k: int) -> "Hypergraph":
        return cls(n, k, kernels.k_subsets(n, k) if k <= n else ())

    @classmethod
    def empty(cls, n: int, k: int) -> "Hypergraph":
        return cls(n, k)

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @property
    def edge_set(self) -> frozenset:
        if self._edge_set is None:
            self._edge_set = frozenset(self._edges.tolist())
        return self._edge_set

    @property
    def vertex_mask(self) -> VertexSet:
        return full_mask(self.n)

    def __len__(self) -> int:
        return int(self._edges.shape[0])

    def __contains__(self, edge) -> bool:
        return self.has_edge(edge)

    def has_edge(self, edge) -> bool:
        mask = as_mask(edge)
        i = np.searchsorted(self._edges, np.uint64(mask))
        return bool(i < len(self) and int(self._edges[i]) == mask)

    def iter_edges(self):
        for e in self._edges.tolist():
            yield members(e)

    def with_edges(self, add=(), remove=()) -> "Hypergraph":
        current = set(self._edges.tolist())
        current.difference_update(as_mask(e) for e in remove)
        current.update(as_mask(e) for e in add)
        return Hypergraph(self.n, self.k, sorted(current))

    def relabel(self, perm) -> "Hypergraph":
        """Image under the vertex map ``v -> perm[v]``."""
        perm = [int(p) for p in perm]
        if sorted(perm) != list(range(self.n)):
            raise InvalidInputError("relabelling must be a permutation of the vertex set")
        return Hypergraph(self.n, self.k, [sum(1 << perm[v] for v in members(e))
                                           for e in self._edges.tolist()])

    def induced(self, mask: VertexSet) -> "Hypergraph":
        """Edges inside ``mask``, keeping the original vertex labels."""
        mask = np.uint64(mask)
        return Hypergraph(self.n, self.k, self._edges[(self._edges & mask) == self._edges])

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and np.array_equal(self._edges, other._edges)

    def __hash__(self):
        return hash((self.n, self.k, self._edges.tobytes()))

    def __repr__(self):
        return f"Hypergraph(n={self.n}, k={self.k}, edges={len(self)})"


@dataclass(frozen=True)
class Bipartition:
    """Ordered split ``V = A | B``; only ``A`` is stored."""

    n: int
    a_side: VertexSet

    def __post_init__(self):
        if int(self.a_side) >> self.n:
            raise InvalidInputError("A must be a subset of the vertex set")
        object.__setattr__(self, "a_side", int(self.a_side))

    @classmethod
    def prefix(cls, n: int, a_size: int) -> "Bipartition":
        if not 0 <= a_size <= n:
            raise InvalidInputError(f"|A|={a_size} outside [0, {n}]")
        return cls(n, full_mask(a_size))

    @classmethod
    def from_vertices(cls, n: int, a_vertices: Iterable[int]) -> "Bipartition":
        return cls(n, vertex_set(a_vertices))

    @property
    def b_side(self) -> VertexSet:
        return full_mask(self.n) ^ self.a_side

    @property
    def a_size(self) -> int:
        return popcount(self.a_side)

    @property
    def b_size(self) -> int:
        return self.n - self.a_size

    def relabel(self, perm) -> "Bipartition":
        return Bipartition(self.n, sum(1 << int(perm[v]) for v in members(self.a_side)))


@dataclass(frozen=True)
class DegreeProfile:
    d: int
    min_degree: int
    argmin_set: VertexSet


def _check_subset(h: Hypergraph, s: VertexSet):
    if s >> h.n:
        raise InvalidQueryError(f"set {list(members(s))} is not inside [0, {h.n})")


def degree(h: Hypergraph, s) -> int:
    """Number of edges of ``h`` containing ``s``."""
    s = as_mask(s)
    _check_subset(h, s)
    if popcount(s) > h.k:
        raise InvalidQueryError(f"|S|={popcount(s)} exceeds k={h.k}")
    if s == 0:
        return len(h)
    return int(kernels.superset_count(h.edges, np.uint64(s)))


def degree_counts(h: Hypergraph, d: int) -> np.ndarray:
    """Degrees of every d-set, indexed by colex rank (= numeric mask order)."""
    if comb(h.n, d) > MAX_DEGREE_TABLE:
        raise InvalidQueryError(f"C({h.n}, {d}) d-sets is beyond exhaustive range")
    return kernels.subset_degree_counts(h.edges, h.n, h.k, d)


def min_d_degree(h: Hypergraph, d: int) -> DegreeProfile:
    """Exhaustive minimum d-degree with the least minimising d-set."""
    if not 1 <= d <= h.k - 1:
        raise InvalidQueryError(f"d={d} outside [1, k-1] for k={h.k}")
    if d > h.n:
        raise InvalidQueryError(f"d={d} exceeds n={h.n}")
    counts = degree_counts(h, d)
    rank = int(np.argmin(counts))
    return DegreeProfile(d=d, min_degree=int(counts[rank]), argmin_set=colex_unrank(rank, d))


def set_parity(p: Bipartition, s) -> Parity:
    return Parity.ODD if popcount(as_mask(s) & p.a_side) & 1 else Parity.EVEN


def edit_distance(h1: Hypergraph, h2: Hypergraph) -> int:
    """Size of the symmetric difference of the two edge sets."""
    if (h1.n, h1.k) != (h2.n, h2.k):
        raise IncompatibleHypergraphsError(
            f"cannot compare (n={h1.n}, k={h1.k}) with (n={h2.n}, k={h2.k})")
    return int(np.setxor1d(h1.edges, h2.edges, assume_unique=True).shape[0])
