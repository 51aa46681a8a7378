"""Binary representations of (k/2)-cycles and parity certificates.

A Hamilton (k/2)-cycle with blocks ``L_1 .. L_t`` gets the bit string
``b_i = |L_i & A| mod 2``. Edge ``L_i | L_{i+1}`` is odd exactly when
``b_i != b_{i+1}``, so constraints on which edge parities exist become
constraints on cyclic bit strings, and those can be refuted by arithmetic
alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import kernels
from .core import Bipartition, Hypergraph, popcount
from .errors import BudgetExceeded, InvalidPatternError, InvalidQueryError, InvalidWitnessError, NoCertificateError
from .extremal import ExtremalSpec, Variant
from .solver import UNLIMITED, CycleWitness, PathWitness, block_graph, parity_table, verify_cycle
from .structure import alpha_good_blocks


@dataclass(frozen=True)
class BinaryRepresentation:
    bits: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.bits)

    def __str__(self):
        return "".join(map(str, self.bits))


def binary_representation(cycle: CycleWitness, p: Bipartition) -> BinaryRepresentation:
    h = cycle.hypergraph
    if 2 * cycle.ell != h.k or not verify_cycle(cycle):
        raise InvalidWitnessError("expected a verified Hamilton (k/2)-cycle")
    return BinaryRepresentation(tuple(popcount(b & p.a_side) & 1 for b in cycle.blocks))


def edge_parity_profile(h: Hypergraph, p: Bipartition) -> tuple[int, int]:
    """``(odd, even)`` edge counts with respect to ``p``."""
    odd = int(kernels.intersection_parity(h.edges, np.uint64(p.a_side)).sum())
    return odd, len(h) - odd


# -- certificates ------------------------------------------------------------------

class CertificateKind(str, Enum):
    ALL_EDGES_ODD_T_ODD = "all-edges-odd-t-odd"
    ALL_EVEN_A_ODD = "all-even-with-|A|-odd"
    PM_CARDINALITY_MISMATCH = "pm-cardinality-mismatch"
    BPRIME_PARITY_CLASH = "bprime-single-even-parity-clash"


@dataclass(frozen=True)
class ParityCertificate:
    kind: CertificateKind
    n: int
    k: int
    t: int
    a_size: int
    floor_n_over_k: int
    half_k_parity: int
    form: str | None = None  # forced bit string shape, B' only

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "k": self.k,
            "t": self.t,
            "a_size": self.a_size,
            "floor_n_over_k": self.floor_n_over_k,
            "half_k_parity": self.half_k_parity,
            "form": self.form,
        }


def _bprime_form(k: int, t: int) -> str:
    # the single even edge is 00 when k/2 is even and 11 otherwise
    if (k // 2) % 2 == 0:
        return "0" + "01" * ((t - 1) // 2)
    return "1" + "10" * ((t - 1) // 2)


def certify_non_hamiltonian(spec: ExtremalSpec) -> ParityCertificate:
    """The parity argument excluding a Hamilton (k/2)-cycle in a family member."""
    reason = spec.membership_error()
    if reason:
        raise NoCertificateError(f"{spec.label()}: {reason}")
    n, k, a = spec.n, spec.k, spec.a_size
    t = 2 * n // k
    form = None
    if spec.variant is Variant.BBAR:
        kind = CertificateKind.ALL_EVEN_A_ODD
    elif spec.variant is Variant.B and n % k == 0:
        kind = CertificateKind.PM_CARDINALITY_MISMATCH
    elif spec.variant is Variant.B:
        kind = CertificateKind.ALL_EDGES_ODD_T_ODD
    else:
        kind = CertificateKind.BPRIME_PARITY_CLASH
        form = _bprime_form(k, t)
    return ParityCertificate(kind, n, k, t, a, n // k, (k // 2) % 2, form)


def cyclic_string_exists(allowed, t: int, ones_parity: int, even_cap: int = UNLIMITED,
                         odd_cap: int = UNLIMITED) -> bool:
    """Is there a cyclic bit string of length ``t`` using only ``allowed``
    transitions, at most ``even_cap`` equal-bit and ``odd_cap`` unequal-bit
    transitions, whose number of ones has parity ``ones_parity``?"""
    feas = parity_table(np.asarray(allowed, dtype=bool), t)
    return any(feas[t - 1, b, b, (ones_parity - b) & 1, even_cap, odd_cap] for b in (0, 1))


def _even_edges_form_star_in_a(h: Hypergraph, p: Bipartition) -> bool:
    par = kernels.intersection_parity(h.edges, np.uint64(p.a_side))
    common = p.a_side
    for e in h.edges[par == 0].tolist():
        if e & ~p.a_side:
            return False
        common &= e
    return common != 0 or not (par == 0).any()


def check_certificate(cert: ParityCertificate, h: Hypergraph, p: Bipartition) -> bool:
    """Does ``cert`` prove that ``h`` has no Hamilton (k/2)-cycle?

    True iff the certificate's structural premise holds for ``h`` and ``p``
    and no cyclic binary string compatible with that premise exists.
    """
    if (h.n, h.k) != (cert.n, cert.k) or p.n != h.n or p.a_size != cert.a_size:
        return False
    if h.k % 2 or h.n % (h.k // 2) or 2 * h.n // h.k != cert.t or cert.t < 3:
        return False
    odd, even = edge_parity_profile(h, p)
    allowed = np.zeros((2, 2), dtype=bool)
    even_cap = UNLIMITED
    if cert.kind is CertificateKind.ALL_EVEN_A_ODD:
        if odd:
            return False
        allowed[0, 0] = allowed[1, 1] = True
    elif cert.kind in (CertificateKind.ALL_EDGES_ODD_T_ODD, CertificateKind.PM_CARDINALITY_MISMATCH):
        if even:
            return False
        allowed[0, 1] = allowed[1, 0] = True
    else:
        if not _even_edges_form_star_in_a(h, p):
            return False
        allowed[0, 1] = allowed[1, 0] = True
        if even:
            # both halves of an even edge inside A have k/2 vertices of A
            b = (h.k // 2) % 2
            allowed[b, b] = True
            # the apex lies in one block, hence in at most two cycle edges
            even_cap = 2
    return not cyclic_string_exists(allowed, cert.t, p.a_size & 1, even_cap)


# -- patterned paths -----------------------------------------------------------

def _parse_pattern(pattern) -> tuple[int, ...]:
    if isinstance(pattern, str):
        if not pattern or set(pattern) - {"0", "1"}:
            raise InvalidPatternError(f"pattern {pattern!r} must be a string over 0/1")
        bits = tuple(int(c) for c in pattern)
    else:
        bits = tuple(pattern)
        if any(b not in (0, 1) for b in bits):
            raise InvalidPatternError(f"pattern {pattern!r} must contain only bits")
    if len(bits) < 2:
        raise InvalidPatternError("pattern needs at least two blocks")
    return bits


def find_patterned_path(h: Hypergraph, p: Bipartition, pattern, alpha=Fraction(1),
                        reference: Hypergraph | None = None, node_limit: int = 0) -> PathWitness | None:
    """Least (k/2)-path whose block parities spell ``pattern``.

    With a ``reference`` hypergraph both end blocks must be alpha-good with
    respect to it. Returns None when the exhaustive search finds nothing.
    """
    bits = _parse_pattern(pattern)
    alpha = Fraction(alpha)
    g = block_graph(h)
    blocks = g.blocks.tolist()
    par = kernels.intersection_parity(g.blocks, np.uint64(p.a_side)).tolist()
    if reference is None:
        good = [True] * len(blocks)
    else:
        good = alpha_good_blocks(h, reference, alpha).tolist()
    ptr = g.adj_ptr.tolist()
    nbrs = g.adj_idx.tolist()
    m = len(bits)
    path: list[int] = []
    nodes = 0

    def dfs(used):
        nonlocal nodes
        if len(path) == m:
            return True
        want = bits[len(path)]
        last = len(path) == m - 1
        prev = path[-1]
        for pos in range(ptr[prev], ptr[prev + 1]):
            j = nbrs[pos]
            if par[j] != want or blocks[j] & used or (last and not good[j]):
                continue
            nodes += 1
            if node_limit and nodes > node_limit:
                raise BudgetExceeded(nodes=nodes)
            path.append(j)
            if dfs(used | blocks[j]):
                return True
            path.pop()
        return False

    for i, b in enumerate(blocks):
        if par[i] != bits[0] or not good[i]:
            continue
        path.append(i)
        if dfs(b):
            return PathWitness(h, tuple(blocks[j] for j in path))
        path.pop()
    return None


# -- splitting even k-sets -------------------------------------------------------

def half_split_types(k: int, x: int) -> frozenset[str]:
    """Parities of the (k/2, k/2) splits of a k-set with ``x`` vertices in A,
    by enumerating every split. Mixed splits are reported as ``"mixed"``."""
    a_mask = (1 << x) - 1
    full = (1 << k) - 1
    found = set()
    for left in combinations(range(k), k // 2):
        lm = sum(1 << v for v in left)
        pa, pb = popcount(lm & a_mask) & 1, popcount((full ^ lm) & a_mask) & 1
        found.add("mixed" if pa != pb else ("odd" if pa else "even"))
    return frozenset(found)


def claimed_half_split_types(k: int, x: int) -> frozenset[str]:
    """Split types an even k-set with ``x`` vertices in A is known to admit."""
    if x % 2 or not 0 <= x <= k:
        raise InvalidQueryError(f"an even k-set has an even number of vertices in A, got x={x}")
    out = set()
    if 0 < x < k:
        out.add("odd")
    if 0 <= x < k:
        out.add("even")
    if x == k:
        out.add("even" if k % 4 == 0 else "odd")
    return frozenset(out)
