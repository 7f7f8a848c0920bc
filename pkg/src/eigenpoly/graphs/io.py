"""Text formats for graphs: graph6, 1-based edge lists and JSON dumps."""
from __future__ import annotations

import json

from .core import Graph, GraphError

FORMATS = ("graph6", "edge_list")


def parse_graph(text: str, format: str = "edge_list", name: str | None = None) -> Graph:
    """Parse ``text`` in one of :data:`FORMATS`.

    The edge-list format is a vertex count on the first line followed by one
    ``i j`` pair per line, 1-based. Blank lines and ``#`` comments are
    skipped. Duplicate edges collapse; loops raise :class:`GraphError`.
    """
    if format in ("edges", "edge_list"):
        return _parse_edge_list(text, name)
    if format == "graph6":
        return _parse_graph6(text.strip(), name)
    raise GraphError(f"unknown graph format {format!r}; expected one of {FORMATS}")


def _parse_edge_list(text: str, name):
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphError("empty edge list: missing vertex-count header")
    try:
        (n,) = [int(tok) for tok in lines[0].split()]
    except ValueError:
        raise GraphError(f"malformed header {lines[0]!r}: expected a single vertex count") from None
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    edges = set()
    for lineno, line in enumerate(lines[1:], start=2):
        toks = line.split()
        try:
            i, j = (int(t) for t in toks)
        except ValueError:
            raise GraphError(f"line {lineno}: expected two vertex indices, got {line!r}") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphError(f"line {lineno}: vertex index out of range 1..{n} in {line!r}")
        if i == j:
            raise GraphError(f"line {lineno}: loop at vertex {i}")
        edges.add((min(i, j) - 1, max(i, j) - 1))
    return Graph(n, frozenset(edges), name)


def _graph6_size(data: bytes):
    if not data:
        raise GraphError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphError("truncated graph6 header")
        vals = [b - 63 for b in data[2:8]]
        off = 8
    else:
        if len(data) < 4:
            raise GraphError("truncated graph6 header")
        vals = [b - 63 for b in data[1:4]]
        off = 4
    n = 0
    for v in vals:
        n = (n << 6) | v
    return n, off


def _parse_graph6(s: str, name):
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii")
    if any(b < 63 or b > 126 for b in data):
        raise GraphError("graph6 string contains characters outside '?'..'~'")
    n, off = _graph6_size(data)
    body = data[off:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}")
    bits = []
    for b in body:
        v = b - 63
        bits.extend((v >> (5 - k)) & 1 for k in range(6))
    edges = set()
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.add((i, j))
            pos += 1
    return Graph(n, frozenset(edges), name)


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        head = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = [1 if (i, j) in g.edges else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [63 + int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)]
    return bytes(head + body).decode("ascii")


def to_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{i + 1} {j + 1}" for i, j in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def graph_to_dict(g: Graph) -> dict:
    return {"name": g.name, "n": g.n, "edges": [[i + 1, j + 1] for i, j in sorted(g.edges)]}


def graph_from_dict(d: dict) -> Graph:
    try:
        n = int(d["n"])
        edges = [(int(i) - 1, int(j) - 1) for i, j in d["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None
    return Graph(n, frozenset(edges), d.get("name"))


def to_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), sort_keys=True)


def from_json(text: str) -> Graph:
    return graph_from_dict(json.loads(text))
