"""Balanced/spectral certificates and reconstruction from an eigenspace."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.optimize import linprog

from .geometry import DEFAULT_HULL_TOL, GeometryError, Polytope, convex_hull, skeleton_graph
from .graphs import Graph, distances
from .spectra import DEFAULT_GROUP_TOL, eigenmatrix, spectrum

DEFAULT_BALANCE_TOL = 1e-8
SPAN_ANGLE_TOL = 1e-7
ARGMAX_TIE_TOL = 1e-9

KINDS = ("balanced", "spectral_polytope", "spectral_graph", "not_spectral", "degenerate", "inconclusive")


@dataclass
class Certificate:
    """Verdict plus the numbers that justify it.

    ``residuals`` holds diagnostics and, under ``*_threshold`` keys, the
    thresholds they were compared against. ``witness`` is JSON-ready.
    """

    kind: str
    theta: float | None = None
    k: int | None = None
    residuals: dict = field(default_factory=dict)
    witness: dict | None = None
    reasons: list = field(default_factory=list)

    @property
    def spectral(self) -> bool:
        return self.kind in ("spectral_polytope", "spectral_graph")

    def threshold_violations(self) -> list:
        """Residual keys exceeding the ``<key>_threshold`` declared alongside them."""
        bad = []
        for key, val in self.residuals.items():
            lim = self.residuals.get(f"{key}_threshold")
            if not key.endswith("_threshold") and lim is not None and val > lim:
                bad.append(key)
        return sorted(bad)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "theta": self.theta,
            "k": self.k,
            "residuals": {key: _jsonable(v) for key, v in sorted(self.residuals.items())},
            "witness": _jsonable(self.witness),
            "reasons": list(self.reasons),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def _coords(pc) -> np.ndarray:
    if isinstance(pc, Polytope):
        return pc.coords
    return np.asarray(getattr(pc, "points", pc), dtype=float)


def is_balanced(pc, g: Graph, tol: float = DEFAULT_BALANCE_TOL) -> Certificate:
    """Least-squares theta for A Psi = theta Psi and the relative residual."""
    Psi = _coords(pc)
    if Psi.shape[0] != g.n:
        raise ValueError(f"{Psi.shape[0]} points but the graph has {g.n} vertices")
    A = g.adjacency
    APsi = A @ Psi
    norm = float(np.linalg.norm(Psi))
    if norm == 0:
        return Certificate("degenerate", reasons=["zero_configuration"])
    theta = float(np.sum(APsi * Psi) / norm**2)
    resid = float(np.linalg.norm(APsi - theta * Psi))
    rel = resid / norm
    res = {"balance_residual": resid, "balance_relative": rel, "balance_threshold": tol}
    if rel <= tol:
        return Certificate("balanced", theta, None, res)
    worst = int(np.argmax(np.linalg.norm(APsi - theta * Psi, axis=1)))
    return Certificate("not_spectral", theta, None, res, {"worst_vertex": worst + 1}, ["not_balanced"])


def is_spectral_polytope(p: Polytope, tol: float = DEFAULT_BALANCE_TOL,
                         group_tol: float = DEFAULT_GROUP_TOL) -> Certificate:
    """Span of the vertex coordinates equals a full eigenspace of the edge graph."""
    if p.degenerate or not p.full_dimensional or len(p.vertices) < 2:
        return Certificate("degenerate", reasons=["not_full_dimensional"],
                           residuals={"dim": p.dim, "ambient_dim": p.ambient_dim})
    G = skeleton_graph(p)
    Psi = p.coords
    bal = is_balanced(Psi, G, tol)
    s = spectrum(G, group_tol)
    mults = s.multiplicities
    res = dict(bal.residuals)
    res["dim"] = p.dim
    res["max_multiplicity"] = max(mults)
    reasons = []
    if max(mults) < p.dim:
        reasons.append("multiplicity_obstruction")
    if bal.kind != "balanced":
        return Certificate("not_spectral", bal.theta, None, res, bal.witness, reasons + bal.reasons)
    k = s.index_of(bal.theta, tol=max(group_tol, 10 * tol))
    if k is None:
        return Certificate("not_spectral", bal.theta, None, res, None, reasons + ["theta_not_eigenvalue"])
    mult = s.groups[k - 1].multiplicity
    res["multiplicity"] = mult
    theta = s.groups[k - 1].theta
    if mult != p.dim:
        return Certificate("not_spectral", theta, k, res, {"multiplicity": mult, "dim": p.dim},
                           reasons + ["multiplicity_mismatch"])
    return Certificate("spectral_polytope", theta, k, res)


def _argmax_face_exists(V: np.ndarray, face, margin_scale: float) -> bool:
    """Is there x with argmax_k <x, v_k> exactly equal to ``face``? (LP feasibility)."""
    n, d = V.shape
    face = list(face)
    others = [k for k in range(n) if k not in face]
    i = face[0]
    # variables (x, t); maximise t subject to <x, v_k - v_i> + t <= 0, <x, v_j - v_i> = 0, t <= 1
    A_ub = np.hstack([V[others] - V[i], np.ones((len(others), 1))])
    b_ub = np.zeros(len(others))
    A_eq = np.hstack([V[face[1:]] - V[i], np.zeros((len(face) - 1, 1))]) if len(face) > 1 else None
    b_eq = np.zeros(len(face) - 1) if len(face) > 1 else None
    bounds = [(-1, 1)] * d + [(None, 1)]
    res = linprog(np.r_[np.zeros(d), -1.0], A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                  bounds=bounds, method="highs")
    return bool(res.status == 0 and -res.fun > ARGMAX_TIE_TOL * margin_scale)


def argmax_route(Phi: np.ndarray, g: Graph) -> dict:
    """Graph-side check via linear programs on the eigenvector rows.

    Condition (i): every vertex is the unique maximiser of some eigenvector.
    Condition (ii): {i, j} is the maximiser set of some eigenvector iff ij is an edge.
    """
    n = Phi.shape[0]
    scale = float(np.max(np.linalg.norm(Phi - Phi.mean(axis=0), axis=1)))
    not_vertex = [i for i in range(n) if not _argmax_face_exists(Phi, [i], scale)]
    mismatched = []
    if not not_vertex:
        for i in range(n):
            for j in range(i + 1, n):
                if _argmax_face_exists(Phi, [i, j], scale) != g.has_edge(i, j):
                    mismatched.append((i, j))
    return {"not_vertex": not_vertex, "mismatched_pairs": mismatched,
            "spectral": not not_vertex and not mismatched}


def _obstructions(g: Graph, d: int) -> list:
    reasons = []
    if d < 2:
        reasons.append("dimension_too_low")
        return reasons
    if g.n and int(g.degrees.min()) < d:
        reasons.append("degree_obstruction")
    if d == 2 and not (g.regular_degree() == 2 and g.is_connected()):
        reasons.append("planar_cycle_obstruction")
    if g.n < d + 1:
        reasons.append("too_few_vertices")
    return reasons


def is_spectral_graph(g: Graph, k: int = 2, tol: float = DEFAULT_HULL_TOL,
                      group_tol: float = DEFAULT_GROUP_TOL, cross_check: bool = True) -> Certificate:
    """Does the eigenpolytope map give an isomorphism g -> skeleton of P_g(theta_k)?"""
    if not distances(g).connected:
        raise ValueError("is_spectral_graph needs a connected graph")
    s = spectrum(g, group_tol)
    Phi = eigenmatrix(s, k)
    theta, d = Phi.theta, Phi.d
    reasons = _obstructions(g, d)
    res = {"dim": d, "multiplicity": d, "hull_tol": tol}
    P = convex_hull(Phi.entries, tol=tol)
    res["hull_margin"] = P.margin
    if P.dim < 2 or P.degenerate:
        # a point or segment is the skeleton of no connected graph on n >= 3 vertices
        return Certificate("not_spectral", theta, k, res, {"affine_dim": P.dim}, reasons or ["dimension_too_low"])
    dup = [(i + 1, int(st.split(":")[1])) for i, st in enumerate(P.vertex_of_input) if st.startswith("duplicate")]
    non_vertex = [i + 1 for i, st in enumerate(P.vertex_of_input) if st in ("interior", "on-face")]
    if dup:
        reasons.append("vertex_collision")
    if non_vertex:
        reasons.append("not_a_vertex")
    missing = sorted(g.edges - P.edges)
    extra = sorted(P.edges - g.edges)
    if missing:
        reasons.append("edge_not_realized")
    if extra:
        reasons.append("extra_hull_edge")
    res["edge_mismatch"] = len(missing) + len(extra)
    res["edge_mismatch_threshold"] = 0
    res["missing_edges"] = len(missing)
    res["extra_edges"] = len(extra)
    hull_ok = not (dup or non_vertex or missing or extra)
    witness = {}
    if dup:
        witness["collisions"] = dup
    if non_vertex:
        witness["non_vertices"] = non_vertex
    if missing:
        witness["edge_not_realized"] = [[i + 1, j + 1] for i, j in missing]
    if extra:
        witness["extra_hull_edges"] = [[i + 1, j + 1] for i, j in extra]
    if cross_check and not dup:
        am = argmax_route(Phi.entries, g)
        res["argmax_spectral"] = am["spectral"]
        res["routes_agree"] = am["spectral"] == hull_ok
    if hull_ok and not reasons:
        return Certificate("spectral_graph", theta, k, res, {"index_map": "identity"}, [])
    if hull_ok:
        reasons.append("obstruction_contradicts_hull")
    return Certificate("not_spectral", theta, k, res, witness, reasons)


@dataclass(frozen=True)
class Transition:
    T: np.ndarray
    residual: float
    max_angle: float


def linear_transition(A, B, tol: float = SPAN_ANGLE_TOL) -> Transition | None:
    """T with A T = B when span A = span B (largest principal angle <= tol)."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    d = A.shape[1]
    for name, M in (("A", A), ("B", B)):
        if np.linalg.matrix_rank(M) < d:
            raise ValueError(f"{name} is rank deficient")
    angles = scipy.linalg.subspace_angles(A, B)
    max_angle = float(np.max(angles)) if len(angles) else 0.0
    if max_angle > tol:
        return None
    T, *_ = np.linalg.lstsq(A, B, rcond=None)
    resid = float(np.linalg.norm(A @ T - B) / max(np.linalg.norm(B), 1e-300))
    return Transition(T, resid, max_angle)


@dataclass
class Reconstruction:
    polytope: Polytope
    graph: Graph | None
    certificate: Certificate | None = None


def reconstruct_from_subspace(U, tol: float = DEFAULT_HULL_TOL) -> Reconstruction:
    """Hull of the rows of a basis matrix and the edge graph of that hull.

    Vertex ``i`` of the returned graph is row ``i`` of ``U`` when every row
    is a distinct hull vertex; otherwise the graph is labelled by hull
    vertices in input order.
    """
    U = np.asarray(U, dtype=float)
    if U.ndim != 2:
        raise ValueError("U must be a matrix")
    gram = U.T @ U
    if not np.allclose(gram, np.eye(U.shape[1]), atol=1e-8):
        raise ValueError("U must have orthonormal columns")
    P = convex_hull(U, tol=tol)
    if P.degenerate or P.dim < 2:
        cert = Certificate("degenerate", residuals={"affine_dim": P.dim}, reasons=["dimension_too_low"])
        return Reconstruction(P, None, cert)
    if len(P.vertices) == U.shape[0]:
        G = Graph(U.shape[0], P.edges, "reconstructed")
    else:
        G = skeleton_graph(P, "reconstructed")
    return Reconstruction(P, G, None)
