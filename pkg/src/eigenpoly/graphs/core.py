"""Simple undirected graphs and all-pairs distances."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graph input or invalid generator parameters."""


@dataclass(frozen=True, eq=False)
class Graph:
    """A finite simple undirected graph on vertices ``0..n-1``.

    Vertex labels are 0-based in memory. Every text or JSON format writes
    them 1-based; the conversion happens only in the I/O helpers.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)
    name: str | None = None

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        normalized = set()
        for i, j in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise GraphError(f"loop at vertex {i + 1}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphError(f"edge ({i + 1}, {j + 1}) has an endpoint outside 1..{self.n}")
            normalized.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, name: str | None = None) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges), name)

    @classmethod
    def from_adjacency(cls, A, name: str | None = None) -> "Graph":
        A = np.asarray(A)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise GraphError(f"adjacency matrix must be square, got shape {A.shape}")
        if not np.array_equal(A, A.T):
            raise GraphError("adjacency matrix must be symmetric")
        if np.any(np.diag(A) != 0):
            raise GraphError("adjacency matrix has loops")
        iu, ju = np.nonzero(np.triu(A, 1))
        return cls(A.shape[0], frozenset(zip(iu.tolist(), ju.tolist())), name)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={len(self.edges)}>"

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for i, j in self.edges:
            A[i, j] = A[j, i] = 1.0
        A.setflags(write=False)
        return A

    @cached_property
    def neighbors(self) -> tuple:
        nbrs = [[] for _ in range(self.n)]
        for i, j in sorted(self.edges):
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @property
    def degrees(self) -> np.ndarray:
        return np.array([len(x) for x in self.neighbors], dtype=int)

    def regular_degree(self) -> int | None:
        """Common vertex degree, or None when the graph is not regular."""
        deg = self.degrees
        if self.n == 0 or np.any(deg != deg[0]):
            return None
        return int(deg[0])

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def relabel(self, perm, name: str | None = None) -> "Graph":
        """Image of the graph under ``i -> perm[i]``."""
        return Graph(self.n, frozenset((perm[i], perm[j]) for i, j in self.edges), name or self.name)

    def complement(self, name: str | None = None) -> "Graph":
        edges = {(i, j) for i in range(self.n) for j in range(i + 1, self.n)} - self.edges
        return Graph(self.n, frozenset(edges), name)

    def is_connected(self) -> bool:
        return bool(distances(self).connected)


@dataclass(frozen=True)
class DistanceResult:
    """All-pairs distances. Unreachable pairs hold -1."""

    matrix: np.ndarray
    diameter: int
    connected: bool


def distances(g: Graph) -> DistanceResult:
    n = g.n
    D = np.full((n, n), -1, dtype=int)
    for s in range(n):
        D[s, s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors[u]:
                if D[s, w] < 0:
                    D[s, w] = D[s, u] + 1
                    queue.append(w)
    connected = bool(np.all(D >= 0))
    diameter = int(D.max()) if n else 0
    D.setflags(write=False)
    return DistanceResult(D, diameter, connected)
