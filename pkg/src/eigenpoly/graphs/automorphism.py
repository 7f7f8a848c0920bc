"""Automorphism groups by individualization-refinement, and orbit profiling.

The search walks one path of the individualization tree (the base
``b_1, b_2, ...``). At level ``k`` it finds, for every target ``t`` in the
cell of ``b_k`` that is not yet reached, one automorphism fixing
``b_1..b_{k-1}`` and sending ``b_k -> t``. Those automorphisms generate the
group and the orbit sizes give its order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core import Graph, GraphError, distances

DEFAULT_SEARCH_BOUND = 128


class AutomorphismError(RuntimeError):
    pass


@dataclass(frozen=True)
class AutGroup:
    """Automorphism group given by generators (0-based permutation tuples)."""

    n: int
    generators: tuple
    order: int
    base: tuple = ()
    orbit_sizes: tuple = ()

    def generators_1based(self) -> list:
        return [[p + 1 for p in g] for g in self.generators]

    def elements(self, cap: int = 100_000) -> list:
        """All group elements by breadth-first closure. Refuses beyond ``cap``."""
        if self.order > cap:
            raise AutomorphismError(f"group order {self.order} exceeds enumeration cap {cap}")
        identity = tuple(range(self.n))
        seen = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.generators:
                    gh = tuple(g[h[i]] for i in range(self.n))
                    if gh not in seen:
                        seen.add(gh)
                        nxt.append(gh)
                        if len(seen) > cap:
                            raise AutomorphismError(f"closure exceeded enumeration cap {cap}")
            frontier = nxt
        return sorted(seen)


def is_automorphism(g: Graph, perm) -> bool:
    if sorted(perm) != list(range(g.n)):
        return False
    return all(g.has_edge(perm[i], perm[j]) for i, j in g.edges)


class _Refiner:
    """Colour refinement of vertex colourings using distance classes."""

    def __init__(self, D: np.ndarray):
        values = np.unique(D)
        self.masks = [(D == v).astype(np.int64) for v in values if v != 0]

    def refine(self, cl: np.ndarray, cr: np.ndarray):
        """Jointly refine left/right colourings; None when they become incompatible."""
        n = len(cl)
        ncolors = -1
        while True:
            k = int(max(cl.max(), cr.max())) + 1
            ohl = np.zeros((n, k), dtype=np.int64)
            ohl[np.arange(n), cl] = 1
            ohr = np.zeros((n, k), dtype=np.int64)
            ohr[np.arange(n), cr] = 1
            keys_l = np.hstack([cl[:, None]] + [M @ ohl for M in self.masks])
            keys_r = np.hstack([cr[:, None]] + [M @ ohr for M in self.masks])
            _, inv = np.unique(np.vstack([keys_l, keys_r]), axis=0, return_inverse=True)
            inv = inv.ravel()
            new_l, new_r = inv[:n], inv[n:]
            if not np.array_equal(np.bincount(new_l, minlength=inv.max() + 1),
                                  np.bincount(new_r, minlength=inv.max() + 1)):
                return None
            count = len(np.unique(new_l))
            cl, cr = new_l, new_r
            if count == ncolors:
                return cl, cr
            ncolors = count


def _individualize(c: np.ndarray, v: int) -> np.ndarray:
    c = c.copy()
    c[v] = c.max() + 1
    return c


def _target_cell(c: np.ndarray):
    counts = np.bincount(c)
    nontrivial = np.nonzero(counts > 1)[0]
    if len(nontrivial) == 0:
        return None
    color = nontrivial[np.argmin(counts[nontrivial])]
    return color


class _Search:
    def __init__(self, g: Graph):
        self.g = g
        self.A = g.adjacency.astype(bool)
        self.refiner = _Refiner(distances(g).matrix)
        self.nodes = 0

    def extend(self, cl, cr):
        """Some automorphism compatible with the coloured pair, or None."""
        self.nodes += 1
        res = self.refiner.refine(cl, cr)
        if res is None:
            return None
        cl, cr = res
        color = _target_cell(cl)
        if color is None:
            perm = np.empty(len(cl), dtype=int)
            perm[np.argsort(cl)] = np.argsort(cr)
            if np.array_equal(self.A[np.ix_(perm, perm)], self.A):
                return tuple(int(x) for x in perm)
            return None
        v = int(np.nonzero(cl == color)[0][0])
        for w in np.nonzero(cr == color)[0]:
            found = self.extend(_individualize(cl, v), _individualize(cr, int(w)))
            if found is not None:
                return found
        return None


def _orbit(point: int, gens) -> set:
    orbit = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in orbit:
                orbit.add(y)
                stack.append(y)
    return orbit


def automorphisms(g: Graph, bound: int = DEFAULT_SEARCH_BOUND) -> AutGroup:
    """Generators and order of Aut(g)."""
    if g.n > bound:
        raise AutomorphismError(f"graph has {g.n} vertices, search bound is {bound}")
    n = g.n
    if n == 0:
        return AutGroup(0, (), 1)
    search = _Search(g)
    zero = np.zeros(n, dtype=int)
    c, _ = search.refiner.refine(zero, zero)
    gens, base, orbit_sizes = [], [], []
    while True:
        color = _target_cell(c)
        if color is None:
            break
        cell = [int(x) for x in np.nonzero(c == color)[0]]
        b = cell[0]
        level = []
        orbit = {b}
        left = _individualize(c, b)
        for t in cell[1:]:
            if t in orbit:
                continue
            perm = search.extend(left, _individualize(c, t))
            if perm is not None:
                level.append(perm)
                orbit = _orbit(b, level)
        gens.extend(level)
        base.append(b)
        orbit_sizes.append(len(orbit))
        c, _ = search.refiner.refine(left, left)
    return AutGroup(n, tuple(gens), prod(orbit_sizes), tuple(base), tuple(orbit_sizes))


def _pair_orbit_labels(n: int, gens) -> np.ndarray:
    """Orbit label of every ordered pair (i, j), flattened as i*n + j."""
    N = n * n
    idx = np.arange(N)
    rows, cols = [], []
    for perm in gens:
        p = np.asarray(perm)
        img = p[idx // n] * n + p[idx % n]
        rows.append(idx)
        cols.append(img)
    if not rows:
        return idx
    r = np.concatenate(rows)
    k = np.concatenate(cols)
    graph = coo_matrix((np.ones(len(r)), (r, k)), shape=(N, N))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


@dataclass(frozen=True)
class TransitivityProfile:
    vertex_transitive: bool
    edge_transitive: bool
    arc_transitive: bool
    distance_transitive: bool
    half_transitive: bool
    orbit_counts: dict = field(default_factory=dict)
    vertex_orbits: int = 0
    edge_orbits: int = 0
    arc_orbits: int = 0
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "vertex_transitive": self.vertex_transitive,
            "edge_transitive": self.edge_transitive,
            "arc_transitive": self.arc_transitive,
            "distance_transitive": self.distance_transitive,
            "half_transitive": self.half_transitive,
            "orbit_counts": {str(k): v for k, v in sorted(self.orbit_counts.items())},
            "vertex_orbits": self.vertex_orbits,
            "edge_orbits": self.edge_orbits,
            "arc_orbits": self.arc_orbits,
            "reason": self.reason,
        }


def transitivity(g: Graph, aut: AutGroup | None = None) -> TransitivityProfile:
    if aut is None:
        aut = automorphisms(g)
    n = g.n
    labels = _pair_orbit_labels(n, aut.generators).reshape(n, n)
    vertex_orbits = len(np.unique(np.diag(labels)))
    edge_list = sorted(g.edges)
    if edge_list:
        ei = np.array(edge_list)
        arc_labels = np.concatenate([labels[ei[:, 0], ei[:, 1]], labels[ei[:, 1], ei[:, 0]]])
        arc_orbits = len(np.unique(arc_labels))
        # an unordered edge's orbit is the union of the orbits of its two arcs
        m = len(edge_list)
        uf = list(range(arc_labels.max() + 1))

        def find(x):
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        for a, b in zip(arc_labels[:m], arc_labels[m:]):
            uf[find(a)] = find(b)
        edge_orbits = len({find(x) for x in arc_labels[:m]})
    else:
        arc_orbits = edge_orbits = 0
    vt = vertex_orbits == 1
    et = edge_orbits == 1
    at = arc_orbits == 1 and vt
    dres = distances(g)
    orbit_counts = {}
    reason = None
    if dres.connected:
        for delta in range(dres.diameter + 1):
            orbit_counts[delta] = int(len(np.unique(labels[dres.matrix == delta])))
        dt = all(v == 1 for v in orbit_counts.values())
    else:
        dt = False
        reason = "disconnected"
    return TransitivityProfile(
        vertex_transitive=vt,
        edge_transitive=et,
        arc_transitive=at,
        distance_transitive=dt,
        half_transitive=vt and et and not at,
        orbit_counts=orbit_counts,
        vertex_orbits=vertex_orbits,
        edge_orbits=edge_orbits,
        arc_orbits=arc_orbits,
        reason=reason,
    )
