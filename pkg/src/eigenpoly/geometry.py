"""Convex hulls in any dimension, polar duals, volumes and skeleta.

Hulls are built incrementally (beneath-beyond). Facets are kept as full
point sets on their supporting hyperplane rather than as simplices, so
coplanar points merge into one facet and cubes come out with square facets.
Predicates use an absolute margin ``tol * scale`` with ``scale`` the largest
distance of an input point from the centroid.
"""
from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .graphs import Graph

logger = logging.getLogger(__name__)

DEFAULT_HULL_TOL = 1e-9


class GeometryError(ValueError):
    pass


class HullWarning(UserWarning):
    pass


@dataclass(frozen=True)
class PointConfiguration:
    """Rows are points ``v_i``; row ``i`` belongs to graph vertex ``i``."""

    points: np.ndarray
    origin_policy: str = "as-given"

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise GeometryError(f"points must be an n x d array with d >= 1, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise GeometryError("points must be finite")
        if self.origin_policy not in ("as-given", "centered"):
            raise GeometryError(f"unknown origin policy {self.origin_policy!r}")
        if self.origin_policy == "centered":
            pts = pts - pts.mean(axis=0)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class Facet:
    normal: np.ndarray  # unit outer normal, ambient coordinates
    offset: float
    vertices: tuple  # input indices of the hull vertices on this facet


@dataclass(eq=False)
class Polytope:
    """Convex hull of a point configuration with vertex/edge/facet data.

    Indices in ``vertices``, ``edges`` and ``facets`` refer to rows of
    ``points``. ``vertex_of_input[i]`` is ``"vertex"``, ``"interior"``,
    ``"on-face"`` or ``"duplicate-of:j"``.
    """

    points: np.ndarray
    vertices: tuple
    edges: frozenset
    facets: tuple
    dim: int
    vertex_of_input: tuple
    degenerate: bool = False
    tol: float = DEFAULT_HULL_TOL
    margin: float = float("inf")
    meta: dict = field(default_factory=dict)

    @property
    def ambient_dim(self) -> int:
        return self.points.shape[1]

    @property
    def coords(self) -> np.ndarray:
        return self.points[list(self.vertices)]

    @property
    def full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def f_vector_partial(self) -> tuple:
        return len(self.vertices), len(self.edges), len(self.facets)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "ambient_dim": self.ambient_dim,
            "degenerate": self.degenerate,
            "tol": self.tol,
            "vertices": [{"index": i + 1, "coords": [float(x) for x in self.points[i]]} for i in self.vertices],
            "edges": [[i + 1, j + 1] for i, j in sorted(self.edges)],
            "facets": [
                {"normal": [float(x) for x in f.normal], "offset": float(f.offset),
                 "vertices": [i + 1 for i in f.vertices]}
                for f in self.facets
            ],
            "vertex_of_input": list(self.vertex_of_input),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_off(self) -> str:
        """OFF text for polytopes of dimension at most 3 (ambient coordinates padded to 3)."""
        if self.ambient_dim > 3:
            raise GeometryError(f"OFF output needs ambient dimension <= 3, got {self.ambient_dim}")
        index = {v: k for k, v in enumerate(self.vertices)}
        pad = np.zeros((len(self.vertices), 3))
        pad[:, : self.ambient_dim] = self.coords
        if self.dim == 3:
            faces = [[index[v] for v in _cyclic_order(self, f)] for f in self.facets]
        elif self.dim == 2:
            faces = [[index[v] for v in _polygon_cycle(self)]]
        else:
            faces = []
        lines = ["OFF", f"{len(self.vertices)} {len(faces)} {len(self.edges)}"]
        lines += [" ".join(repr(float(x)) for x in row) for row in pad]
        lines += [" ".join(map(str, [len(f)] + f)) for f in faces]
        return "\n".join(lines) + "\n"


def _polygon_cycle(p: Polytope) -> list:
    nbrs = {v: [] for v in p.vertices}
    for i, j in p.edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    start = p.vertices[0]
    cycle, prev, cur = [start], None, start
    while True:
        nxt = [w for w in sorted(nbrs[cur]) if w != prev][0]
        if nxt == start:
            return cycle
        cycle.append(nxt)
        prev, cur = cur, nxt


def _cyclic_order(p: Polytope, f: Facet) -> list:
    """Vertices of a 2-dimensional facet of a 3-polytope, counter-clockwise seen from outside."""
    pts = p.points[list(f.vertices)]
    c = pts.mean(axis=0)
    n = f.normal
    a = pts[0] - c
    a = a - (a @ n) * n
    a /= np.linalg.norm(a)
    b = np.cross(n, a)
    ang = np.arctan2((pts - c) @ b, (pts - c) @ a)
    return [f.vertices[k] for k in np.argsort(ang)]


def _affine_frame(Y: np.ndarray, tol: float):
    """Origin, orthonormal basis (columns) and rank of the affine hull of the rows."""
    origin = Y.mean(axis=0)
    if len(Y) == 1:
        return origin, np.zeros((Y.shape[1], 0)), 0
    _, s, Vt = np.linalg.svd(Y - origin, full_matrices=False)
    rank = int(np.sum(s > tol * max(1.0, np.sqrt(len(Y)))))
    return origin, Vt[:rank].T, rank


def _affine_rank(Y: np.ndarray, tol: float) -> int:
    if len(Y) <= 1:
        return 0
    s = np.linalg.svd(Y - Y.mean(axis=0), compute_uv=False)
    return int(np.sum(s > tol * max(1.0, np.sqrt(len(Y)))))


class _Hull:
    """Beneath-beyond in full-dimensional local coordinates."""

    def __init__(self, Y: np.ndarray, tol: float):
        self.Y = Y
        self.r = Y.shape[1]
        self.tol = tol
        self.facets = {}  # id -> [normal, offset, set(point ids)]
        self.next_id = 0

    def _plane(self, ids, interior):
        P = self.Y[sorted(ids)]
        c = P.mean(axis=0)
        _, _, Vt = np.linalg.svd(P - c)
        nrm = Vt[-1]
        if nrm @ (interior - c) > 0:
            nrm = -nrm
        return nrm, float(nrm @ c)

    def _add(self, nrm, off, ids):
        self.facets[self.next_id] = [nrm, off, set(ids)]
        self.next_id += 1

    def build(self, order):
        r, Y = self.r, self.Y
        simplex = self._initial_simplex(order)
        self.interior = Y[simplex].mean(axis=0)
        for face in combinations(simplex, r):
            nrm, off = self._plane(face, self.interior)
            self._add(nrm, off, face)
        for q in order:
            if q in simplex:
                continue
            self._insert(q)

    def _initial_simplex(self, order):
        Y = self.Y
        chosen = [order[0]]
        d0 = np.linalg.norm(Y[order] - Y[order[0]], axis=1)
        chosen.append(order[int(np.argmax(d0))])
        while len(chosen) < self.r + 1:
            base = Y[chosen[0]]
            M = (Y[chosen[1:]] - base).T
            Q, _ = np.linalg.qr(M)
            R = Y[order] - base
            res = np.linalg.norm(R - (R @ Q) @ Q.T, axis=1)
            chosen.append(order[int(np.argmax(res))])
        return chosen

    def _insert(self, q):
        y = self.Y[q]
        ids = list(self.facets)
        N = np.array([self.facets[f][0] for f in ids])
        b = np.array([self.facets[f][1] for f in ids])
        dist = N @ y - b
        visible = [f for f, s in zip(ids, dist) if s > self.tol]
        coplanar = [f for f, s in zip(ids, dist) if abs(s) <= self.tol]
        for f in coplanar:
            self.facets[f][2].add(q)
        if not visible:
            return
        vis = set(visible)
        new = []
        for f in visible:
            fset = self.facets[f][2]
            for g in ids:
                if g in vis:
                    continue
                common = fset & self.facets[g][2]
                if len(common) < self.r - 1 or q in common:
                    continue
                if _affine_rank(self.Y[sorted(common)], self.tol) != self.r - 2:
                    continue
                if g in coplanar:
                    continue
                new.append(common | {q})
        orphans = set().union(*(self.facets[f][2] for f in visible))
        for f in visible:
            del self.facets[f]
        planes = []
        for s in new:
            nrm, off = self._plane(s, self.interior)
            for entry in planes:
                if np.linalg.norm(entry[0] - nrm) <= 1e3 * self.tol and abs(entry[1] - off) <= 1e3 * self.tol:
                    entry[2] |= s
                    break
            else:
                planes.append([nrm, off, set(s)])
        for nrm, off, s in planes:
            merged = False
            for f in coplanar:
                fn, fo, fs = self.facets[f]
                if np.linalg.norm(fn - nrm) <= 1e3 * self.tol and abs(fo - off) <= 1e3 * self.tol:
                    fs |= s
                    merged = True
                    break
            if not merged:
                self._add(nrm, off, s)
        # points that sat on deleted facets may still lie on a new one
        remaining = orphans - set().union(*(v[2] for v in self.facets.values()))
        if remaining:
            rem = sorted(remaining)
            for entry in self.facets.values():
                on = np.abs(self.Y[rem] @ entry[0] - entry[1]) <= self.tol
                entry[2].update(x for x, flag in zip(rem, on) if flag)


def convex_hull(pc, tol: float = DEFAULT_HULL_TOL) -> Polytope:
    """Convex hull with vertex classification, edges and facets.

    ``pc`` may be a :class:`PointConfiguration` or an array of points.
    """
    if not isinstance(pc, PointConfiguration):
        pc = PointConfiguration(pc)
    X = pc.points
    n, D = X.shape
    if n < 1:
        raise GeometryError("convex hull of an empty point set")
    scale = float(np.max(np.linalg.norm(X - X.mean(axis=0), axis=1))) if n > 1 else 0.0
    atol = tol * max(scale, 1e-300)

    status = ["interior"] * n
    reps = []
    for i in range(n):
        if reps:
            dd = np.linalg.norm(X[reps] - X[i], axis=1)
            k = int(np.argmin(dd))
            if dd[k] <= atol:
                status[i] = f"duplicate-of:{reps[k] + 1}"
                continue
        reps.append(i)

    origin, basis, rank = _affine_frame(X[reps], atol)
    meta = {"scale": scale, "abs_tol": atol, "ambient_dim": D}
    if rank <= 1:
        return _low_dim_hull(X, reps, status, origin, basis, rank, tol, meta)

    Y = (X - origin) @ basis
    hull = _Hull(Y, atol)
    hull.build(reps)

    # refit planes on their full point sets and recollect incidences
    facets = []
    Yr = Y[reps]
    margin = np.inf
    worst_on = 0.0
    for nrm, off, s in hull.facets.values():
        nrm, off = hull._plane(s, hull.interior)
        dist = Yr @ nrm - off
        on = np.abs(dist) <= atol
        ids = [reps[k] for k in np.nonzero(on)[0]]
        worst_on = max(worst_on, float(np.max(np.abs(dist[on]))) if on.any() else 0.0)
        off_dist = dist[~on]
        if len(off_dist):
            margin = min(margin, float(-off_dist.max()))
        facets.append((nrm, off, ids))
    if np.isfinite(margin) and margin < 100 * atol:
        warnings.warn(f"ill-conditioned hull: worst predicate margin {margin:.3e} (tol {atol:.3e})", HullWarning)
    if worst_on > atol:
        warnings.warn(f"coplanarity residual {worst_on:.3e} exceeds tol {atol:.3e}", HullWarning)

    incident = {i: [] for i in reps}
    for k, (_, _, ids) in enumerate(facets):
        for i in ids:
            incident[i].append(k)
    normals = np.array([f[0] for f in facets])
    verts = []
    for i in reps:
        ks = incident[i]
        if not ks:
            continue
        if np.linalg.matrix_rank(normals[ks], tol=1e-6) == rank:
            verts.append(i)
            status[i] = "vertex"
        else:
            status[i] = "on-face"
    vset = set(verts)
    out_facets = []
    for nrm, off, ids in facets:
        fv = tuple(sorted(i for i in ids if i in vset))
        amb_n = basis @ nrm
        out_facets.append(Facet(amb_n, float(off + amb_n @ origin), fv))
    out_facets.sort(key=lambda f: f.vertices)
    edges = _edges_from_facets(verts, [f.vertices for f in out_facets], rank)
    return Polytope(X, tuple(verts), edges, tuple(out_facets), rank, tuple(status),
                    degenerate=False, tol=tol, margin=margin, meta=meta)


def _low_dim_hull(X, reps, status, origin, basis, rank, tol, meta):
    if rank == 0:
        verts = (reps[0],)
        edges = frozenset()
    else:
        t = ((X[reps] - origin) @ basis)[:, 0]
        lo, hi = reps[int(np.argmin(t))], reps[int(np.argmax(t))]
        verts = tuple(sorted((lo, hi)))
        edges = frozenset({verts})
    for i in verts:
        status[i] = "vertex"
    return Polytope(X, verts, edges, (), rank, tuple(status), degenerate=True, tol=tol, meta=meta)


def _edges_from_facets(verts, facet_sets, dim) -> frozenset:
    """Vertex pairs whose smallest common face contains no other vertex."""
    if dim == 2:
        return frozenset(tuple(f) for f in facet_sets if len(f) == 2)
    idx = {v: k for k, v in enumerate(verts)}
    inc = np.zeros((len(facet_sets), len(verts)), dtype=bool)
    for r, f in enumerate(facet_sets):
        inc[r, [idx[v] for v in f]] = True
    edges = set()
    for a in range(len(verts)):
        both_all = inc[:, a][:, None] & inc
        for b in range(a + 1, len(verts)):
            rows = both_all[:, b]
            if rows.sum() < dim - 1:
                continue
            common = inc[rows].all(axis=0)
            if common.sum() == 2:
                edges.add((verts[a], verts[b]))
    return frozenset(edges)


def skeleton_graph(p: Polytope, name: str | None = None) -> Graph:
    """Edge graph on hull vertices; vertex ``k`` is input point ``p.vertices[k]``."""
    index = {v: k for k, v in enumerate(p.vertices)}
    return Graph(len(p.vertices), frozenset((index[i], index[j]) for i, j in p.edges), name)


def _measure(P: np.ndarray, k: int, tol: float) -> float:
    """k-dimensional volume of conv(P), where the rows span a k-dim affine space."""
    if k == 0:
        return 1.0
    origin, basis, rank = _affine_frame(P, tol)
    if rank != k:
        raise GeometryError(f"expected a {k}-dimensional point set, got affine dimension {rank}")
    Z = (P - origin) @ basis
    if k == 1:
        return float(Z.max() - Z.min())
    if k == 2:
        c = Z.mean(axis=0)
        order = np.argsort(np.arctan2(Z[:, 1] - c[1], Z[:, 0] - c[0]))
        Zs = Z[order]
        x, y = Zs[:, 0], Zs[:, 1]
        return float(0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))
    return volume(convex_hull(Z))


def volume(p: Polytope) -> float:
    """Volume as a sum of pyramids over facets with apex at the vertex centroid."""
    if p.dim != p.ambient_dim or p.degenerate:
        raise GeometryError(f"volume needs a full-dimensional polytope; affine dimension is {p.dim} "
                            f"in R^{p.ambient_dim}")
    d = p.dim
    apex = p.coords.mean(axis=0)
    atol = p.meta.get("abs_tol", p.tol)
    total = 0.0
    for f in p.facets:
        h = f.offset - f.normal @ apex
        total += h * _measure(p.points[list(f.vertices)], d - 1, atol) / d
    return float(total)


class FacetsNotAdjacent(GeometryError):
    pass


def ridge_volume(p: Polytope, f1: int, f2: int) -> float:
    """(d-2)-volume of the ridge shared by facets ``f1`` and ``f2`` (indices into ``p.facets``).

    For d = 2 the ridge is a vertex and 1 is returned (counting measure).
    """
    if f1 == f2:
        raise FacetsNotAdjacent("a facet is not adjacent to itself")
    common = sorted(set(p.facets[f1].vertices) & set(p.facets[f2].vertices))
    d = p.dim
    atol = p.meta.get("abs_tol", p.tol)
    if not common or _affine_rank(p.points[common], atol) != d - 2 or (d == 2 and len(common) != 1):
        raise FacetsNotAdjacent(f"facets {f1} and {f2} do not share a ridge")
    if d == 2:
        return 1.0
    return _measure(p.points[common], d - 2, atol)


def polar_dual(p: Polytope, c=None) -> Polytope:
    """The polytope {x : <x, v_i> <= c_i} for the vertices v_i of ``p``.

    Computed as the polar of Q = conv{v_i / c_i}: each facet {<n, y> = b} of
    Q gives the dual vertex n / b. Dual facet ``i`` (hyperplane
    <x, v_i> = c_i) has as vertices the duals of the facets of Q through
    v_i / c_i; ``meta["facet_of_vertex"]`` maps input index i to its facet.
    """
    if not p.full_dimensional or p.degenerate:
        raise GeometryError(f"polar dual needs a full-dimensional polytope (dimension {p.dim})")
    verts = list(p.vertices)
    n = p.points.shape[0]
    cvec = np.ones(n) if c is None else np.asarray(c, dtype=float)
    if cvec.shape != (n,):
        raise GeometryError(f"offset vector must have length {n}")
    if np.any(cvec[verts] <= 0):
        raise GeometryError("offset vector must be positive on every vertex")
    atol = p.meta.get("abs_tol", p.tol)
    if min(f.offset for f in p.facets) <= atol:
        raise GeometryError("origin is not strictly interior to the polytope")
    Q = convex_hull(p.points[verts] / cvec[verts, None], tol=p.tol)
    if Q.dim != p.dim:
        raise GeometryError("scaled vertex set lost full dimension")
    if min(f.offset for f in Q.facets) <= Q.meta["abs_tol"]:
        raise GeometryError("origin is not interior for offsets c (interiority lost)")
    dual_pts = np.array([f.normal / f.offset for f in Q.facets])
    dual_facets = []
    facet_of_vertex = {}
    for local in Q.vertices:
        i = verts[local]
        members = tuple(k for k, f in enumerate(Q.facets) if local in f.vertices)
        nv = p.points[i]
        norm = float(np.linalg.norm(nv))
        facet_of_vertex[i] = len(dual_facets)
        dual_facets.append(Facet(nv / norm, float(cvec[i] / norm), members))
    m = len(dual_pts)
    dverts = tuple(range(m))
    edges = _edges_from_facets(list(dverts), [f.vertices for f in dual_facets], p.dim)
    scale = float(np.max(np.linalg.norm(dual_pts - dual_pts.mean(axis=0), axis=1)))
    meta = {"scale": scale, "abs_tol": p.tol * max(scale, 1.0), "ambient_dim": p.dim,
            "facet_of_vertex": facet_of_vertex, "offsets": cvec}
    return Polytope(dual_pts, dverts, edges, tuple(dual_facets), p.dim, tuple(["vertex"] * m),
                    degenerate=False, tol=p.tol, margin=Q.margin, meta=meta)


def centered(p_or_points, tol: float = DEFAULT_HULL_TOL) -> Polytope:
    """Hull of the points translated so the vertex barycenter is the origin."""
    if isinstance(p_or_points, Polytope):
        p = p_or_points
        return convex_hull(p.points - p.coords.mean(axis=0), tol=p.tol)
    P = convex_hull(p_or_points, tol=tol)
    return convex_hull(P.points - P.coords.mean(axis=0), tol=tol)
