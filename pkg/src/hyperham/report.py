"""Experiment reports and the two reproducible suites.

A report is plain JSON. Timing lives only in the top-level ``wall_ms``
field, so ``to_json(timing=False)`` is byte-identical across deterministic
re-runs.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import __version__
from .core import Bipartition, members
from .errors import InvalidInputError
from .extremal import (ExtremalSpec, Variant, build, enumerate_family, threshold_bruteforce,
                       threshold_codegree)
from .parity import check_certificate, certify_non_hamiltonian
from .solver import solve_half_cycle, split_into_matchings, verify

TIMING_FIELDS = ("wall_ms",)


@dataclass
class ExperimentReport:
    command: str
    parameters: dict
    results: dict
    input_digest: str | None = None
    wall_ms: int = 0
    nodes: int = 0
    version: str = __version__
    passed: bool = True
    undecided: bool = False

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "command": self.command,
            "input_digest": self.input_digest,
            "parameters": self.parameters,
            "results": self.results,
            "nodes": self.nodes,
            "version": self.version,
            "passed": self.passed,
            "undecided": self.undecided,
        }
        if timing:
            out["wall_ms"] = self.wall_ms
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    @property
    def exit_code(self) -> int:
        if self.undecided:
            return 2
        return 0 if self.passed else 1


def strip_timing(tree):
    """Drop timing fields anywhere in a JSON tree (for structural comparison)."""
    if isinstance(tree, dict):
        return {k: strip_timing(v) for k, v in tree.items() if k not in TIMING_FIELDS}
    if isinstance(tree, list):
        return [strip_timing(v) for v in tree]
    return tree


def sorted_sets(masks) -> list[list[int]]:
    return [list(members(m)) for m in masks]


# -- Hamilton (k/2)-cycle suite ---------------------------------------------------

def _solver_entry(res) -> dict:
    return {"decision": res.decision, "nodes": res.nodes}


def _check_spec(spec: ExtremalSpec, unpruned: bool, node_limit: int) -> dict:
    h = build(spec)
    p = spec.partition
    entry = {"spec": spec.to_dict()}
    try:
        cert = certify_non_hamiltonian(spec)
        entry["certificate"] = cert.to_dict()
        entry["check"] = check_certificate(cert, h, p)
    except Exception as exc:  # recorded, fails the suite
        entry["certificate"] = None
        entry["check"] = False
        entry["certificate_error"] = str(exc)
    entry["solver_pruned"] = _solver_entry(solve_half_cycle(h, p, node_limit=node_limit))
    if unpruned:
        entry["solver_unpruned"] = _solver_entry(solve_half_cycle(h, node_limit=node_limit))
    return entry


def _entry_ok(entry: dict) -> tuple[bool, bool]:
    runs = [entry["solver_pruned"]] + ([entry["solver_unpruned"]] if "solver_unpruned" in entry else [])
    undecided = any(r["decision"] == "undecided" for r in runs)
    ok = entry["check"] and entry["certificate"] is not None and all(r["decision"] == "no" for r in runs)
    return ok, undecided


def _demonstration(n: int, k: int, a_size: int) -> dict:
    """Force-built bbar with even |A|: the parity obstruction is gone."""
    spec = ExtremalSpec(Variant.BBAR, n, k, a_size)
    h = build(spec, force=True)
    res = solve_half_cycle(h, spec.partition)
    out = {"spec": spec.to_dict(), "decision": res.decision, "nodes": res.nodes,
           "witness": None, "verified": None, "matchings_verified": None}
    if res.witness is not None:
        out["witness"] = sorted_sets(res.witness.blocks)
        out["verified"] = verify(res.witness)
        if n % k == 0:
            out["matchings_verified"] = all(verify(m) for m in split_into_matchings(res.witness))
    return out


def suite_sizes(k: int, n_max: int) -> list[int]:
    half = k // 2
    return list(range(3 * half, n_max + 1, half))


def run_prop12_suite(k: int, n_max: int, jobs: int = 1, unpruned: bool = True,
                     node_limit: int = 0, demonstration: bool = True,
                     sizes: list[int] | None = None) -> ExperimentReport:
    """Certificate, certificate check and exhaustive solver for every family member."""
    if k not in (4, 6):
        raise InvalidInputError(f"the suite covers k in {{4, 6}}, got k={k}")
    start = time.perf_counter()
    sizes = suite_sizes(k, n_max) if sizes is None else sorted(sizes)
    specs = [s for n in sizes for s in enumerate_family(n, k)]
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_check_spec, specs, [unpruned] * len(specs),
                                    [node_limit] * len(specs)))
    else:
        entries = [_check_spec(s, unpruned, node_limit) for s in specs]
    passed, undecided, nodes = True, False, 0
    for e in entries:
        ok, und = _entry_ok(e)
        e["ok"] = ok
        passed &= ok
        undecided |= und
        nodes += e["solver_pruned"]["nodes"] + e.get("solver_unpruned", {}).get("nodes", 0)
    results = {"members": entries}
    if demonstration and k == 4 and n_max >= 8:
        results["demonstration"] = _demonstration(8, 4, 2)
    params = {"k": k, "n_max": n_max, "sizes": sizes, "unpruned": unpruned, "node_limit": node_limit}
    return ExperimentReport("suite prop12", params, results,
                            wall_ms=int((time.perf_counter() - start) * 1000), nodes=nodes,
                            passed=passed and not undecided, undecided=undecided)


# -- threshold scan ----------------------------------------------------------------

def run_threshold_scan(k: int, n_max: int, d: int, n_min: int | None = None,
                       sizes: list[int] | None = None) -> ExperimentReport:
    """Brute-force maximum minimum d-degree against the closed form (d = k-1 only)."""
    start = time.perf_counter()
    half = k // 2
    if sizes is None:
        lo = 3 * half if n_min is None else n_min
        lo += (-lo) % half
        sizes = list(range(lo, n_max + 1, half))
    rows = []
    passed = True
    for n in sizes:
        brute, spec = threshold_bruteforce(n, k, d)
        formula = threshold_codegree(n, k) if d == k - 1 else None
        match = None if formula is None else formula == brute
        if match is False:
            passed = False
        rows.append({"n": n, "formula": formula, "brute": brute,
                     "argmax": spec.to_dict() if spec else None, "match": match})
    params = {"k": k, "d": d, "sizes": list(sizes)}
    return ExperimentReport("threshold scan", params, {"rows": rows},
                            wall_ms=int((time.perf_counter() - start) * 1000), passed=passed)


def partition_dict(p: Bipartition) -> dict:
    return {"n": p.n, "a": list(members(p.a_side))}


__all__ = ["ExperimentReport", "run_prop12_suite", "run_threshold_scan", "strip_timing",
           "sorted_sets", "partition_dict"]
