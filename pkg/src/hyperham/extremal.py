"""The parity-obstructed extremal k-graphs and their degree thresholds.

Part ``A`` is always the prefix ``{0, ..., |A|-1}``; the star apex of the
``B'`` variant defaults to vertex 0. Any other choice is isomorphic.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
from functools import lru_cache
from math import comb

import numpy as np

from . import kernels
from .core import Bipartition, Hypergraph, full_mask, min_d_degree
from .errors import InvalidInputError, InvalidSpecError


class Variant(str, Enum):
    B = "b"              # all odd k-sets
    BBAR = "bbar"        # all even k-sets
    BPRIME = "bprime"    # odd k-sets plus a star inside A
    BBAR_PRIME4 = "bbar4prime"  # k=4 only; never a family member, force-build only


@dataclass(frozen=True)
class ExtremalSpec:
    variant: Variant
    n: int
    k: int
    a_size: int
    apex: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not 0 <= self.a_size <= self.n:
            raise InvalidSpecError(f"|A|={self.a_size} outside [0, {self.n}]")
        if self.n > 64:
            raise InvalidSpecError(f"n={self.n} exceeds the 64-vertex capacity")
        if self.k < 1:
            raise InvalidSpecError(f"k={self.k} must be positive")
        if self.variant is Variant.BPRIME:
            if self.apex is None and self.a_size > 0:
                object.__setattr__(self, "apex", 0)
        elif self.apex is not None:
            raise InvalidSpecError("only the bprime variant takes an apex")
        if self.apex is not None and not 0 <= self.apex < self.a_size:
            raise InvalidSpecError(f"apex {self.apex} is not in A = [0, {self.a_size})")
        if self.variant is Variant.BBAR_PRIME4 and (self.k != 4 or self.a_size < 2):
            raise InvalidSpecError("bbar4prime needs k=4 and |A| >= 2")

    @property
    def partition(self) -> Bipartition:
        return Bipartition.prefix(self.n, self.a_size)

    def membership_error(self) -> str | None:
        """Why the spec is outside the extremal family, or None if inside."""
        n, k, a = self.n, self.k, self.a_size
        if k < 4 or k % 2:
            return f"k={k} must be even and at least 4"
        if n < k or n % (k // 2):
            return f"n={n} must be a multiple of k/2={k // 2} with n >= k"
        if self.variant is Variant.BBAR_PRIME4:
            return "bbar4prime is an exploratory generator outside the family"
        if n % k == 0:
            if self.variant is Variant.B:
                return None if (n // k - a) % 2 else f"n/k - |A| = {n // k - a} is even"
            if self.variant is Variant.BBAR:
                return None if a % 2 else f"|A|={a} is even"
            return "bprime requires n not divisible by k"
        if self.variant is Variant.B:
            return None
        if self.variant is Variant.BBAR:
            return "bbar requires n divisible by k"
        diff = n // k - a
        if k % 4 == 0:
            return None if diff % 2 else f"k in 4N and floor(n/k) - |A| = {diff} is even"
        return None if diff % 2 == 0 else f"k in 2N\\4N and floor(n/k) - |A| = {diff} is odd"

    def in_family(self) -> bool:
        return self.membership_error() is None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["variant"] = self.variant.value
        return out

    def label(self) -> str:
        apex = f",apex={self.apex}" if self.apex is not None else ""
        return f"{self.variant.value}(n={self.n},k={self.k},|A|={self.a_size}{apex})"


@lru_cache(maxsize=16)
def _all_ksets(n: int, k: int) -> np.ndarray:
    arr = kernels.k_subsets(n, k) if k <= n else np.zeros(0, dtype=np.uint64)
    arr.setflags(write=False)
    return arr


def _star_mask(a_mask: int, apex: int, ksets: np.ndarray) -> np.ndarray:
    inside = (ksets & np.uint64(~a_mask & 0xFFFFFFFFFFFFFFFF)) == 0
    has_apex = (ksets >> np.uint64(apex)) & np.uint64(1) == 1
    return inside & has_apex


def build(spec: ExtremalSpec, force: bool = False) -> Hypergraph:
    """Construct the hypergraph described by ``spec``.

    Out-of-family specs raise ``InvalidSpecError`` unless ``force`` is set.
    """
    if not force:
        reason = spec.membership_error()
        if reason:
            raise InvalidSpecError(f"{spec.label()} is not in the extremal family: {reason}")
    n, k = spec.n, spec.k
    ksets = _all_ksets(n, k)
    a_mask = full_mask(spec.a_size)
    odd = kernels.intersection_parity(ksets, np.uint64(a_mask)).astype(bool)
    if spec.variant is Variant.B:
        keep = odd
    elif spec.variant is Variant.BBAR:
        keep = ~odd
    elif spec.variant is Variant.BPRIME:
        keep = odd.copy()
        if spec.apex is not None:
            keep |= _star_mask(a_mask, spec.apex, ksets)
    else:
        # even 4-sets plus the (3,1)-sets containing vertices 0 and 1
        pair = np.uint64(0b11)
        three_in_a = np.bitwise_count(ksets & np.uint64(a_mask)) == 3
        keep = ~odd | (three_in_a & ((ksets & pair) == pair))
    return Hypergraph(n, k, ksets[keep])


def parity_graph(p: Bipartition, k: int, odd: bool) -> Hypergraph:
    """All odd (``odd=True``) or all even k-sets with respect to ``p``."""
    ksets = _all_ksets(p.n, k)
    par = kernels.intersection_parity(ksets, np.uint64(p.a_side)).astype(bool)
    return Hypergraph(p.n, k, ksets[par if odd else ~par])


def build_star(n: int, k: int, apex: int) -> Hypergraph:
    """All k-subsets of ``[0, n)`` containing ``apex``."""
    if not 0 <= apex < n:
        raise InvalidInputError(f"apex {apex} outside [0, {n})")
    if k > n:
        return Hypergraph(n, k)
    rest = _all_ksets(n - 1, k - 1)
    low = np.uint64((1 << apex) - 1)
    edges = (rest & low) | np.uint64(1 << apex) | ((rest & ~low) << np.uint64(1))
    return Hypergraph(n, k, edges)


def _check_nk(n: int, k: int):
    if k < 4 or k % 2:
        raise InvalidInputError(f"k={k} must be even and at least 4")
    if n < k or n % (k // 2):
        raise InvalidInputError(f"n={n} must be a multiple of k/2={k // 2} and at least k")


def enumerate_family(n: int, k: int) -> list[ExtremalSpec]:
    """Every member of the extremal family, ordered by variant then |A|."""
    _check_nk(n, k)
    specs = []
    for variant in (Variant.B, Variant.BBAR, Variant.BPRIME):
        for a in range(n + 1):
            spec = ExtremalSpec(variant, n, k, a)
            if spec.in_family():
                specs.append(spec)
    return specs


def threshold_codegree(n: int, k: int) -> int:
    """Closed-form maximum minimum codegree over the extremal family."""
    _check_nk(n, k)
    if n % k == 0 and (n // 2 - n // k) % 2 == 0:
        return n // 2 - k + 1
    return n // 2 - k + 2


def codegree_formula(spec: ExtremalSpec) -> int:
    """Closed-form minimum codegree of a B / Bbar / B' member with large parts."""
    smaller = min(spec.a_size, spec.n - spec.a_size)
    if spec.variant is Variant.BBAR:
        return smaller - spec.k + 1
    if spec.variant in (Variant.B, Variant.BPRIME):
        return smaller - spec.k + 2
    raise InvalidInputError(f"no codegree formula for {spec.variant.value}")


def threshold_bruteforce(n: int, k: int, d: int, first_class_only: bool = False):
    """Maximum minimum d-degree over the family, by building every member.

    Returns ``(value, spec)`` where ``spec`` is the first member (in family
    order) attaining the maximum. ``first_class_only`` restricts to the
    members listed for ``n`` divisible by k. For ``d < k - 1`` no closed
    form is known, so treat the result as exploratory data.
    """
    _check_nk(n, k)
    if not k // 2 <= d <= k - 1:
        raise InvalidInputError(f"d={d} outside [k/2, k-1] = [{k // 2}, {k - 1}]")
    specs = enumerate_family(n, k)
    if first_class_only:
        if n % k:
            raise InvalidInputError("the first class exists only for n divisible by k")
        specs = [s for s in specs if s.variant in (Variant.B, Variant.BBAR)]
    best, best_spec = None, None
    for spec in specs:
        value = min_d_degree(build(spec), d).min_degree
        if best is None or value > best:
            best, best_spec = value, spec
    return best, best_spec


def star_min_degree(n: int, k: int, d: int) -> int:
    """Closed form for the minimum d-degree of a star."""
    return comb(n - 1 - d, k - 1 - d)
