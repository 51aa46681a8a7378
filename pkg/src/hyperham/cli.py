"""``hyperham`` command line.

Exit codes: 0 success, 1 assertion failure, 2 budget exhausted or
undecided, 3 bad input.
"""
from __future__ import annotations

import functools
import json
import sys
from fractions import Fraction
from pathlib import Path

import click
import numpy as np

from . import io, parity, report, solver, structure
from .core import Bipartition, Hypergraph, members, vertex_set
from .errors import BudgetExceeded, HyperhamError, NoCertificateError
from .extremal import (ExtremalSpec, Variant, build, build_star, parity_graph, threshold_bruteforce,
                       threshold_codegree)

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3


class _Group(click.Group):
    """Maps click usage errors to the input-error exit code."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.UsageError as exc:
            exc.show()
            rv = EXIT_INPUT
        except click.ClickException as exc:
            exc.show()
            rv = exc.exit_code
        except click.Abort:
            click.echo("Aborted!", err=True)
            rv = EXIT_FAIL
        code = rv if isinstance(rv, int) else EXIT_OK
        if standalone_mode:
            sys.exit(code)
        return code


def _guard(fn):
    """Turn library errors into exit codes with a one-line message."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return fn(*args, **kwargs)
        except BudgetExceeded as exc:
            click.echo(f"undecided: {exc} (nodes={exc.nodes})", err=True)
            ctx.exit(EXIT_BUDGET)
        except NoCertificateError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_FAIL)
        except (HyperhamError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_INPUT)

    return wrapper


def _emit(ctx, payload):
    if ctx.obj["format"] == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        click.echo(_table(payload))


def _table(payload) -> str:
    # list of flat rows -> columns; everything else -> key: value lines
    if isinstance(payload, dict) and len(payload) == 1:
        (only,) = payload.values()
        if isinstance(only, list) and only and all(isinstance(r, dict) for r in only):
            payload = only
    if isinstance(payload, list) and payload and all(isinstance(r, dict) for r in payload):
        cols = list(payload[0])
        cells = [[_cell(r.get(c)) for c in cols] for r in payload]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
        lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
        return "\n".join(lines)
    if isinstance(payload, dict):
        width = max(len(k) for k in payload) if payload else 0
        return "\n".join(f"{k.ljust(width)}  {_cell(v)}" for k, v in payload.items())
    return _cell(payload)


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _parse_set(text: str) -> int:
    try:
        return vertex_set(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise click.BadParameter(f"expected comma-separated vertices, got {text!r}") from None


def _partition(n: int, a_size: int | None, a_vertices: str | None) -> Bipartition:
    if a_vertices is not None:
        return Bipartition(n, _parse_set(a_vertices))
    if a_size is None:
        raise click.UsageError("give the partition with --a-size or --a-vertices")
    return Bipartition.prefix(n, a_size)


def _sets(masks) -> list[list[int]]:
    return [list(members(int(m))) for m in masks]


@click.group(cls=_Group)
@click.option("--deterministic/--no-deterministic", default=True, show_default=True,
              help="Return the lexicographically least witness.")
@click.option("--budget-ms", type=click.IntRange(min=1), default=None,
              help="Wall-clock budget for searches.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, envvar="HYPERHAM_JOBS",
              show_default=True, help="Worker processes (default from HYPERHAM_JOBS).")
@click.option("--json", "fmt", flag_value="json", default=True, help="JSON output (default).")
@click.option("--table", "fmt", flag_value="table", help="Plain text table output.")
@click.version_option(package_name="artifact", prog_name="hyperham")
@click.pass_context
def cli(ctx, deterministic, budget_ms, jobs, fmt):
    """Exact tools for Hamilton (k/2)-cycles in parity-obstructed k-graphs."""
    ctx.obj = {"deterministic": deterministic, "budget_ms": budget_ms, "jobs": jobs, "format": fmt}


# -- gen ---------------------------------------------------------------------------

GEN_VARIANTS = [v.value for v in Variant] + ["star", "complete", "random"]


@cli.command()
@click.option("--variant", type=click.Choice(GEN_VARIANTS), required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--a", "a_size", type=int, default=None, help="|A| for the parity variants.")
@click.option("--apex", type=int, default=None)
@click.option("--force", is_flag=True, help="Build out-of-family specs too.")
@click.option("--p", "prob", type=float, default=0.5, show_default=True, help="Edge probability (random).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
@_guard
def gen(ctx, variant, n, k, a_size, apex, force, prob, seed, out):
    """Generate a hypergraph in .khg format."""
    if variant == "star":
        h = build_star(n, k, 0 if apex is None else apex)
    elif variant == "complete":
        h = Hypergraph.complete(n, k)
    elif variant == "random":
        full = Hypergraph.complete(n, k).edges
        keep = np.random.default_rng(seed).random(full.shape[0]) < prob
        h = Hypergraph(n, k, full[keep])
    else:
        if a_size is None:
            raise click.UsageError(f"--a is required for variant {variant}")
        h = build(ExtremalSpec(Variant(variant), n, k, a_size, apex), force=force)
    text = io.emit(h)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


# -- solve -------------------------------------------------------------------------

@cli.command()
@click.option("--in", "path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--structure", type=click.Choice(["half-cycle", "l-cycle", "pm", "path"]),
              default="half-cycle", show_default=True)
@click.option("--l", "ell", type=int, default=None, help="Overlap for l-cycle.")
@click.option("--a-size", type=int, default=None, help="Prune with the prefix partition of this size.")
@click.option("--a-vertices", default=None, help="Prune with this A (comma-separated).")
@click.option("--start", default=None, help="First block of a path.")
@click.option("--end", default=None, help="Last block of a path.")
@click.option("--node-limit", type=int, default=0)
@click.pass_context
@_guard
def solve(ctx, path, structure, ell, a_size, a_vertices, start, end, node_limit):
    """Decide a Hamilton structure exhaustively."""
    h = io.load(path)
    opts = {"budget_ms": ctx.obj["budget_ms"], "node_limit": node_limit,
            "deterministic": ctx.obj["deterministic"], "jobs": ctx.obj["jobs"]}
    if structure == "half-cycle":
        p = None if a_size is None and a_vertices is None else _partition(h.n, a_size, a_vertices)
        res = solver.solve_half_cycle(h, p, **opts)
        wit = None if res.witness is None else _sets(res.witness.blocks)
    elif structure == "l-cycle":
        if ell is None:
            raise click.UsageError("--l is required for l-cycle")
        res = solver.solve_l_cycle(h, ell, **opts)
        wit = None if res.witness is None else list(res.witness.order)
    elif structure == "pm":
        res = solver.solve_perfect_matching(h, node_limit=node_limit)
        wit = None if res.witness is None else _sets(res.witness.edges)
    else:
        if start is None or end is None:
            raise click.UsageError("--start and --end are required for path")
        res = solver.solve_half_path(h, _parse_set(start), _parse_set(end), (1 << h.n) - 1,
                                     node_limit=node_limit)
        wit = None if res.witness is None else _sets(res.witness.blocks)
    _emit(ctx, {"decision": res.decision, "witness": wit, "nodes_explored": res.nodes,
                "wall_ms": res.wall_ms})
    if res.decision == "undecided":
        ctx.exit(EXIT_BUDGET)


# -- certify -----------------------------------------------------------------------

@cli.command()
@click.option("--in", "path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--a-size", type=int, required=True)
@click.option("--variant", type=click.Choice(["b", "bbar", "bprime"]), default=None,
              help="Certificate to try; default tries each applicable one.")
@click.pass_context
@_guard
def certify(ctx, path, a_size, variant):
    """Emit a parity certificate that refutes a Hamilton (k/2)-cycle."""
    h = io.load(path)
    p = Bipartition.prefix(h.n, a_size)
    variants = [Variant(variant)] if variant else [Variant.B, Variant.BBAR, Variant.BPRIME]
    for v in variants:
        spec = ExtremalSpec(v, h.n, h.k, a_size)
        if spec.membership_error():
            continue
        cert = parity.certify_non_hamiltonian(spec)
        if parity.check_certificate(cert, h, p):
            _emit(ctx, {"certificate": cert.to_dict(), "checked": True,
                        "input_digest": io.digest(h)})
            return
    raise NoCertificateError(f"no parity certificate applies to {path} with |A|={a_size}")


# -- closeness ---------------------------------------------------------------------

@cli.command()
@click.option("--in", "path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--variant", type=click.Choice(["b", "bbar"]), required=True)
@click.option("--mode", type=click.Choice(["exact", "balanced-only", "local-search"]),
              default="exact", show_default=True)
@click.option("--all-sizes", is_flag=True, help="Search every |A|, not only balanced ones.")
@click.pass_context
@_guard
def closeness(ctx, path, variant, mode, all_sizes):
    """Edit distance to the nearest b / bbar construction."""
    h = io.load(path)
    c = structure.closeness(h, variant, mode=mode, all_sizes=all_sizes)
    _emit(ctx, {"distance": c.distance, "partition": list(members(c.best_partition.a_side)),
                "variant": c.best_variant.value, "epsilon": str(c.epsilon_equivalent),
                "upper_bound": c.upper_bound})


# -- witness -----------------------------------------------------------------------

@cli.command()
@click.option("--kind", type=click.Choice(["three-edges", "bridge-pair", "ff-family"]), required=True)
@click.option("--in", "path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--a-size", type=int, default=None)
@click.option("--a-vertices", default=None)
@click.option("--side", type=click.Choice(["even", "odd"]), default="odd", show_default=True)
@click.option("--d", "d", type=int, default=None, help="Also report the degree premise (bridge-pair).")
@click.option("--n", "n", type=int, default=None)
@click.option("--k", "k", type=int, default=None)
@click.option("--node-limit", type=int, default=0)
@click.pass_context
@_guard
def witness(ctx, kind, path, a_size, a_vertices, side, d, n, k, node_limit):
    """Find the forbidden-intersection witnesses."""
    if kind == "ff-family":
        if n is None or k is None:
            raise click.UsageError("--n and --k are required for ff-family")
        size, fam = structure.max_forbidden_intersection_family(n, k, node_limit)
        _emit(ctx, {"kind": kind, "size": size, "witness": _sets(fam),
                    "premise_ok": structure.forbidden_intersection_ok(fam, k)})
        return
    if path is None:
        raise click.UsageError(f"--in is required for {kind}")
    h = io.load(path)
    if kind == "three-edges":
        w = structure.find_three_edges(h)
        _emit(ctx, {"kind": kind, "witness": None if w is None else _sets(w),
                    "intersecting": structure.is_intersecting(h), "substar": structure.is_substar(h)})
        return
    p = _partition(h.n, a_size, a_vertices)
    w = structure.find_bridge_pair(h, p, side)
    out = {"kind": kind, "side": side, "witness": None if w is None else _sets(w)}
    if d is not None:
        holds, dh, dr = structure.bridge_degree_premise(h, p, side, d)
        out["premise"] = {"d": d, "holds": holds, "min_degree": dh, "reference_min_degree": dr}
    _emit(ctx, out)


# -- bridge ------------------------------------------------------------------------

@cli.command()
@click.option("--in", "path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--pattern", required=True)
@click.option("--alpha", default="1", show_default=True, help="Exact rational, e.g. 1/100.")
@click.option("--ref", "ref", type=click.Choice(["b", "bbar", "none"]), default="none", show_default=True)
@click.option("--a-size", type=int, default=None)
@click.option("--a-vertices", default=None)
@click.option("--node-limit", type=int, default=0)
@click.pass_context
@_guard
def bridge(ctx, path, pattern, alpha, ref, a_size, a_vertices, node_limit):
    """Find a (k/2)-path with a prescribed block-parity pattern."""
    h = io.load(path)
    try:
        alpha = Fraction(alpha)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"alpha must be a rational, got {alpha!r}") from None
    p = _partition(h.n, a_size, a_vertices)
    reference = None if ref == "none" else parity_graph(p, h.k, odd=(ref == "b"))
    w = parity.find_patterned_path(h, p, pattern, alpha, reference, node_limit)
    _emit(ctx, {"pattern": pattern, "alpha": str(alpha), "ref": ref,
                "witness": None if w is None else _sets(w.blocks)})


# -- threshold ---------------------------------------------------------------------

@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--d", "d", type=int, default=None, help="Degree order, default k-1.")
@click.option("--brute", is_flag=True, help="Fail (exit 1) unless formula equals brute force.")
@click.pass_context
@_guard
def threshold(ctx, n, k, d, brute):
    """Maximum minimum d-degree over the extremal family."""
    d = k - 1 if d is None else d
    formula = threshold_codegree(n, k) if d == k - 1 else None
    value, spec = threshold_bruteforce(n, k, d)
    _emit(ctx, {"formula": formula, "brute": value, "argmax": spec.to_dict()})
    if brute and formula is not None and formula != value:
        ctx.exit(EXIT_FAIL)


# -- suite -------------------------------------------------------------------------

@cli.command()
@click.argument("name", type=click.Choice(["prop12", "threshold"]))
@click.option("--k", "k", type=int, required=True)
@click.option("--n-max", type=int, required=True)
@click.option("--d", "d", type=int, default=None, help="Degree order for the threshold scan.")
@click.option("--no-unpruned", is_flag=True, help="Skip the unpruned cross-check.")
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None)
@click.option("--no-timing", is_flag=True, help="Omit timing fields from the report.")
@click.pass_context
@_guard
def suite(ctx, name, k, n_max, d, no_unpruned, out, no_timing):
    """Run a reproducible experiment suite and write its report."""
    if name == "prop12":
        rep = report.run_prop12_suite(k, n_max, jobs=ctx.obj["jobs"], unpruned=not no_unpruned)
    else:
        rep = report.run_threshold_scan(k, n_max, k - 1 if d is None else d)
    text = rep.to_json(timing=not no_timing)
    if out:
        Path(out).write_text(text)
    if ctx.obj["format"] == "json":
        if not out:
            click.echo(text, nl=False)
    else:
        rows = rep.results.get("rows") or [
            {"spec": e["spec"], "kind": (e["certificate"] or {}).get("kind"), "check": e["check"],
             "solver": e["solver_pruned"]["decision"], "ok": e["ok"]}
            for e in rep.results["members"]]
        click.echo(_table(rows))
    ctx.exit(rep.exit_code)


def main():
    cli()


if __name__ == "__main__":
    main()
