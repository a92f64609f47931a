"""Text formats: ``dm v1`` set systems, ``gf2 v1`` matrices, ``graph v1`` graphs."""

from __future__ import annotations

import json
from pathlib import Path

from .core import DeltaMatroidError, SetSystem
from .gf2 import Gf2SymMatrix
from .graphs import SimpleGraph
from .polynomial import IntPolynomial


class FormatError(DeltaMatroidError):
    def __init__(self, msg: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"line {line}: "
        elif where:
            where += " "
        super().__init__(where + msg)
        self.line = line


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((i, line))
    return out


def _int(tok: str, lineno: int, source) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", lineno, source) from None


def _header(lines, expected: str, source) -> None:
    if not lines:
        raise FormatError("empty file", None, source)
    lineno, line = lines[0]
    if line.split() != expected.split():
        raise FormatError(f"expected header {expected!r}, got {line!r}", lineno, source)


def _size_line(lines, idx: int, source) -> int:
    if len(lines) <= idx:
        raise FormatError("missing 'n <int>' line", None, source)
    lineno, line = lines[idx]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "n":
        raise FormatError(f"expected 'n <int>', got {line!r}", lineno, source)
    n = _int(parts[1], lineno, source)
    if n < 0:
        raise FormatError("n must be nonnegative", lineno, source)
    return n


def parse_dm(text: str, source: str | None = None) -> SetSystem:
    lines = _lines(text)
    _header(lines, "dm v1", source)
    n = _size_line(lines, 1, source)
    if len(lines) < 3:
        raise FormatError("missing 'feasible ...' line", None, source)
    lineno, line = lines[2]
    parts = line.split()
    if parts[0] != "feasible":
        raise FormatError(f"expected 'feasible <masks>', got {line!r}", lineno, source)
    masks = [_int(t, lineno, source) for t in parts[1:]]
    if len(lines) > 3:
        raise FormatError("unexpected trailing content", lines[3][0], source)
    try:
        return SetSystem(n, tuple(masks))
    except DeltaMatroidError as exc:
        raise FormatError(str(exc), lineno, source) from None


def format_dm(S: SetSystem) -> str:
    return f"dm v1\nn {S.n}\nfeasible {' '.join(map(str, S.feasible))}\n"


def dm_literal(S: SetSystem) -> str:
    """Single-line form used in listings: ``n=2 feasible=0 1 3``."""
    return f"n={S.n} feasible={' '.join(map(str, S.feasible))}"


def parse_gf2(text: str, source: str | None = None) -> Gf2SymMatrix:
    lines = _lines(text)
    _header(lines, "gf2 v1", source)
    n = _size_line(lines, 1, source)
    body = lines[2:]
    if len(body) != n:
        raise FormatError(f"expected {n} matrix rows, found {len(body)}", None, source)
    rows = []
    for lineno, line in body:
        if len(line) != n or set(line) - {"0", "1"}:
            raise FormatError(f"expected {n} characters from {{0,1}}, got {line!r}", lineno, source)
        rows.append(sum(1 << j for j, ch in enumerate(line) if ch == "1"))
    for i in range(n):
        for j in range(i):
            if (rows[i] >> j & 1) != (rows[j] >> i & 1):
                raise FormatError(
                    f"matrix is not symmetric at ({i + 1},{j + 1})", body[i][0], source
                )
    return Gf2SymMatrix(n, tuple(rows))


def format_gf2(A: Gf2SymMatrix) -> str:
    body = "".join("".join(str(v) for v in row) + "\n" for row in A.to_lists())
    return f"gf2 v1\nn {A.n}\n{body}"


def parse_graph(text: str, source: str | None = None) -> SimpleGraph:
    """``n <int>`` then ``edge i j`` lines; a leading ``graph v1`` header is optional."""
    lines = _lines(text)
    if lines and lines[0][1].split() == ["graph", "v1"]:
        lines = lines[1:]
    n = _size_line(lines, 0, source)
    edges = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "edge":
            raise FormatError(f"expected 'edge <i> <j>', got {line!r}", lineno, source)
        a, b = _int(parts[1], lineno, source), _int(parts[2], lineno, source)
        if not (1 <= a <= n and 1 <= b <= n) or a == b:
            raise FormatError(f"bad edge {a}-{b} for n={n}", lineno, source)
        edges.append((a, b))
    return SimpleGraph.from_edges(n, edges)


def format_graph(G: SimpleGraph) -> str:
    return f"graph v1\nn {G.n}\n" + "".join(f"edge {a} {b}\n" for a, b in G.edges())


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", None, str(path)) from None


def load_dm(path: str | Path) -> SetSystem:
    return parse_dm(read_text(path), str(path))


def load_gf2(path: str | Path) -> Gf2SymMatrix:
    return parse_gf2(read_text(path), str(path))


def load_graph(path: str | Path) -> SimpleGraph:
    return parse_graph(read_text(path), str(path))


def poly_json(p: IntPolynomial) -> dict:
    return {"coeffs": list(p.coeffs)}


def dumps(obj: dict) -> str:
    """Stable, compact JSON for golden-file comparison."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
