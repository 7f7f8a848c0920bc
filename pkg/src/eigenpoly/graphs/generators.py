"""Named graph families and embedded named graphs."""
from __future__ import annotations

from importlib import resources
from itertools import combinations, product

from .core import Graph, GraphError
from .io import parse_graph

NAMED = (
    "petersen",
    "dodecahedron",
    "icosahedron",
    "holt",
    "schlafli",
    "gosset",
    "rhombic_dodecahedron_skeleton",
    "rhombic_triacontahedron_skeleton",
)


def _need(cond, msg):
    if not cond:
        raise GraphError(msg)


def cycle(n: int) -> Graph:
    _need(n >= 3, f"cycle needs n >= 3, got {n}")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)), f"cycle({n})")


def complete(n: int) -> Graph:
    _need(n >= 1, f"complete graph needs n >= 1, got {n}")
    return Graph(n, frozenset(combinations(range(n), 2)), f"complete({n})")


def hypercube(d: int) -> Graph:
    """Q_d; vertex ``i`` is the binary word of ``i`` (most significant bit first)."""
    _need(d >= 1, f"hypercube needs d >= 1, got {d}")
    n = 1 << d
    edges = frozenset((i, i ^ (1 << b)) for i in range(n) for b in range(d) if i < i ^ (1 << b))
    return Graph(n, edges, f"hypercube({d})")


def complete_multipartite(*parts: int) -> Graph:
    _need(len(parts) >= 1 and all(p >= 1 for p in parts), f"invalid part sizes {parts}")
    label = [k for k, p in enumerate(parts) for _ in range(p)]
    n = len(label)
    edges = frozenset((i, j) for i, j in combinations(range(n), 2) if label[i] != label[j])
    return Graph(n, edges, f"complete_multipartite({','.join(map(str, parts))})")


def johnson(n: int, k: int) -> Graph:
    _need(n >= 1 and 1 <= k <= n, f"johnson needs 1 <= k <= n, got n={n}, k={k}")
    verts = [frozenset(c) for c in combinations(range(n), k)]
    edges = frozenset((i, j) for i, j in combinations(range(len(verts)), 2)
                      if len(verts[i] & verts[j]) == k - 1)
    return Graph(len(verts), edges, f"johnson({n},{k})")


def hamming(d: int, q: int) -> Graph:
    _need(d >= 1 and q >= 2, f"hamming needs d >= 1 and q >= 2, got d={d}, q={q}")
    words = list(product(range(q), repeat=d))
    edges = frozenset((i, j) for i, j in combinations(range(len(words)), 2)
                      if sum(a != b for a, b in zip(words[i], words[j])) == 1)
    return Graph(len(words), edges, f"hamming({d},{q})")


def halved_cube(n: int) -> Graph:
    """Even-weight words of length ``n``, adjacent at Hamming distance 2."""
    _need(n >= 2, f"halved cube needs n >= 2, got {n}")
    words = [w for w in product((0, 1), repeat=n) if sum(w) % 2 == 0]
    edges = frozenset((i, j) for i, j in combinations(range(len(words)), 2)
                      if sum(a != b for a, b in zip(words[i], words[j])) == 2)
    return Graph(len(words), edges, f"halved_cube({n})")


def prism(n: int) -> Graph:
    _need(n >= 3, f"prism needs n >= 3, got {n}")
    edges = set()
    for i in range(n):
        edges.add((i, (i + 1) % n))
        edges.add((n + i, n + (i + 1) % n))
        edges.add((i, n + i))
    return Graph(2 * n, frozenset(edges), f"prism({n})")


def cocktail_party(m: int) -> Graph:
    """Complement of ``m`` disjoint edges ``{2i, 2i+1}``."""
    _need(m >= 1, f"cocktail party needs m >= 1, got {m}")
    n = 2 * m
    edges = frozenset((i, j) for i, j in combinations(range(n), 2) if i // 2 != j // 2)
    return Graph(n, edges, f"cocktail_party({m})")


def named(name: str) -> Graph:
    if name not in NAMED:
        raise GraphError(f"unknown named graph {name!r}")
    text = resources.files("eigenpoly.data.graphs").joinpath(f"{name}.edges").read_text()
    return parse_graph(text, "edge_list", name=name)


FAMILIES = {
    "cycle": cycle,
    "complete": complete,
    "hypercube": hypercube,
    "complete_multipartite": complete_multipartite,
    "johnson": johnson,
    "hamming": hamming,
    "halved_cube": halved_cube,
    "prism": prism,
    "cocktail_party": cocktail_party,
}


def generate(name: str, *params: int) -> Graph:
    """Build a graph by generator id, e.g. ``generate("johnson", 5, 2)``."""
    if name in FAMILIES:
        try:
            return FAMILIES[name](*(int(p) for p in params))
        except TypeError as exc:
            raise GraphError(f"bad parameters for {name}: {params} ({exc})") from None
    if name in NAMED:
        _need(not params, f"named graph {name!r} takes no parameters")
        return named(name)
    raise GraphError(f"unknown generator {name!r}")


def parse_generator_spec(spec: str) -> Graph:
    """Parse the CLI form ``name:p1,p2`` (or ``name:p1:p2``)."""
    name, _, rest = spec.partition(":")
    params = [p for p in rest.replace(":", ",").split(",") if p.strip()] if rest else []
    try:
        values = [int(p) for p in params]
    except ValueError:
        raise GraphError(f"non-integer generator parameter in {spec!r}") from None
    return generate(name.strip(), *values)
