"""Backend selection for the hot loops.

``HYPERHAM_BACKEND`` picks the implementation at import time: ``numba``
(default when importable) or ``numpy``. Both modules expose the same
functions; ``get_backend`` returns either one explicitly so tests and the
benchmark can run them side by side.
"""
import importlib
import os

KERNEL_NAMES = (
    "k_subsets",
    "intersection_parity",
    "superset_count",
    "subset_degree_counts",
    "half_split_pairs",
    "cycle_search",
    "path_search",
    "pm_search",
    "three_edges",
    "bridge_pair",
    "odd_edge_counts",
    "disjoint_pair",
)


def _have_numba():
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


HAVE_NUMBA = _have_numba()


def get_backend(name):
    if name == "numba":
        if not HAVE_NUMBA:
            raise ImportError("numba backend requested but numba is not installed")
        return importlib.import_module("hyperham._kernels_numba")
    if name == "numpy":
        return importlib.import_module("hyperham._kernels_numpy")
    raise ValueError(f"unknown backend {name!r}")


def _default_backend():
    requested = os.environ.get("HYPERHAM_BACKEND", "").strip().lower()
    if requested in ("numpy", "python", "0", "off"):
        return "numpy"
    if requested == "numba" or (not requested and HAVE_NUMBA):
        return "numba" if HAVE_NUMBA else "numpy"
    return "numpy"


BACKEND = _default_backend()
_impl = get_backend(BACKEND)

k_subsets = _impl.k_subsets
intersection_parity = _impl.intersection_parity
superset_count = _impl.superset_count
subset_degree_counts = _impl.subset_degree_counts
half_split_pairs = _impl.half_split_pairs
cycle_search = _impl.cycle_search
path_search = _impl.path_search
pm_search = _impl.pm_search
three_edges = _impl.three_edges
bridge_pair = _impl.bridge_pair
odd_edge_counts = _impl.odd_edge_counts
disjoint_pair = _impl.disjoint_pair
