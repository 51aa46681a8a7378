"""Reading and writing the ``.khg`` text format.

Format: a header line ``k n``, then one edge per line as ascending
space-separated 0-based vertex indices. Blank lines and anything after a
``#`` are ignored. ``emit`` writes the canonical form (edges in numeric
mask order), so ``emit(parse(text)) == text`` for canonical files.
"""
from __future__ import annotations

import hashlib
import warnings
from pathlib import Path

from .core import Hypergraph, members
from .errors import DuplicateEdgeWarning, ParseError


def _tokens(line):
    """Yield ``(column, token)`` pairs, 1-based columns."""
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        yield col + 1, tok
        col += len(tok)


def _int(tok, lineno, col):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno, col) from None


def parse(text: str) -> Hypergraph:
    header = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = list(_tokens(line))
        if not toks:
            continue
        if header is None:
            if len(toks) != 2:
                raise ParseError("header must be 'k n'", lineno, toks[0][0])
            k, n = (_int(t, lineno, c) for c, t in toks)
            if k < 1 or n < 0 or n > 64:
                raise ParseError(f"unsupported header k={k} n={n}", lineno, toks[0][0])
            header = (k, n)
            continue
        k, n = header
        mask = 0
        for col, tok in toks:
            v = _int(tok, lineno, col)
            if not 0 <= v < n:
                raise ParseError(f"vertex {v} outside [0, {n})", lineno, col)
            if mask >> v & 1:
                raise ParseError(f"vertex {v} repeated in edge", lineno, col)
            mask |= 1 << v
        if len(toks) != k:
            raise ParseError(f"edge has {len(toks)} vertices, expected k={k}", lineno, toks[0][0])
        if mask in seen:
            warnings.warn(f"line {lineno}: duplicate edge ignored", DuplicateEdgeWarning, stacklevel=2)
            continue
        seen.add(mask)
        edges.append(mask)
    if header is None:
        raise ParseError("missing 'k n' header", 1)
    return Hypergraph(header[1], header[0], edges)


def emit(h: Hypergraph) -> str:
    lines = [f"{h.k} {h.n}"]
    lines.extend(" ".join(map(str, members(e))) for e in h.edges.tolist())
    return "\n".join(lines) + "\n"


def load(path) -> Hypergraph:
    return parse(Path(path).read_text())


def save(h: Hypergraph, path) -> None:
    Path(path).write_text(emit(h))


def digest(h: Hypergraph) -> str:
    """Content hash of the canonical serialisation."""
    return hashlib.sha256(emit(h).encode()).hexdigest()
