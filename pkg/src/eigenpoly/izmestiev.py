"""The Izmestiev matrix of a polytope: finite differences, ridge formula, audit, criterion."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .certify import Certificate, is_spectral_polytope
from .geometry import GeometryError, Polytope, convex_hull, polar_dual, ridge_volume, skeleton_graph, volume
from .graphs import Graph
from .spectra import spectrum

DEFAULT_STEP = 1e-3
DEFAULT_AUDIT_TOL = 1e-4
DEFAULT_CRITERION_TOL = 1e-6
_C_GUARD = 0.5


class IzmestievError(GeometryError):
    pass


@dataclass
class IzmestievMatrix:
    """X indexed by the hull vertices of the source polytope, in ``p.vertices`` order.

    ``origin`` is the vertex barycenter the polytope was translated by before
    polarity; the kernel identity X Psi = 0 holds for ``coords - origin``.
    """

    X: np.ndarray
    scheme: str
    step: float | None
    origin: np.ndarray
    residuals: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    def to_csv(self) -> str:
        return "\n".join(",".join(repr(float(x)) for x in row) for row in self.X) + "\n"


def dual_volume(p: Polytope, c=None) -> float:
    """Volume of {x : <x, v_i> <= c_i}, with c near the all-ones vector."""
    n = p.points.shape[0]
    cvec = np.ones(n) if c is None else np.asarray(c, dtype=float)
    if cvec.shape != (n,):
        raise IzmestievError(f"offset vector must have length {n}")
    if np.any(np.abs(cvec - 1.0) >= _C_GUARD):
        raise IzmestievError("offsets must stay within (0.5, 1.5) of 1")
    try:
        return volume(polar_dual(p, cvec))
    except GeometryError as exc:
        raise IzmestievError(f"dual volume failed: {exc}") from exc


def _prepare(p: Polytope):
    """Centered, unit-circumradius copy of p (vertices only) plus origin and scale."""
    if p.degenerate or not p.full_dimensional:
        raise IzmestievError(f"need a full-dimensional polytope, affine dimension is {p.dim}")
    V = p.coords
    origin = V.mean(axis=0)
    W = V - origin
    R = float(np.max(np.linalg.norm(W, axis=1)))
    q = convex_hull(W / R, tol=p.tol)
    if len(q.vertices) != len(V):
        raise IzmestievError("vertex set changed under normalization")
    return q, origin, R


def _stencil(q: Polytope, h: float) -> np.ndarray:
    n = len(q.vertices)
    E = np.eye(n)
    one = np.ones(n)
    V0 = dual_volume(q, one)
    X = np.zeros((n, n))
    for i in range(n):
        X[i, i] = -(dual_volume(q, one + h * E[i]) - 2 * V0 + dual_volume(q, one - h * E[i])) / h**2
        for j in range(i + 1, n):
            pp = dual_volume(q, one + h * (E[i] + E[j]))
            pm = dual_volume(q, one + h * (E[i] - E[j]))
            mp = dual_volume(q, one - h * (E[i] - E[j]))
            mm = dual_volume(q, one - h * (E[i] + E[j]))
            X[i, j] = X[j, i] = -(pp - pm - mp + mm) / (4 * h * h)
    return X


def izmestiev_fd(p: Polytope, h: float = DEFAULT_STEP, richardson: bool = True) -> IzmestievMatrix:
    """Negative Hessian of the dual volume at c = 1 by central differences.

    The dual volume is piecewise cubic around c = 1 and only C^2 when the
    dual is not simple, so the plain stencil carries an error linear in h.
    With ``richardson`` the stencil is evaluated at h and h/2 and combined
    as 2 D(h/2) - D(h), which cancels that term.
    """
    if not 0 < h < _C_GUARD / 2:
        raise IzmestievError(f"step must lie in (0, {_C_GUARD / 2})")
    q, origin, R = _prepare(p)
    d = q.dim
    Xh = _stencil(q, h)
    res = {"symmetry_gap": 0.0}
    if richardson:
        Xh2 = _stencil(q, h / 2)
        X = 2 * Xh2 - Xh
        res["richardson_correction"] = float(np.max(np.abs(X - Xh))) * R**-d
    else:
        X = Xh
    X = 0.5 * (X + X.T) * R**-d
    scheme = "finite_difference_richardson" if richardson else "finite_difference"
    return IzmestievMatrix(X, scheme, h, origin, res)


def izmestiev_ridge(p: Polytope) -> IzmestievMatrix:
    """Off-diagonal entries from ridge volumes; diagonal from X Psi = 0.

    For d = 2 the ridge is a single point and counts as 1.
    """
    q, origin, R = _prepare(p)
    n, d = len(q.vertices), q.dim
    V = q.coords
    dual = polar_dual(q)
    fov = dual.meta["facet_of_vertex"]
    G = skeleton_graph(q)
    X = np.zeros((n, n))
    norms = np.linalg.norm(V, axis=1)
    for i, j in sorted(G.edges):
        cosang = float(V[i] @ V[j] / (norms[i] * norms[j]))
        sinang = np.sqrt(max(0.0, 1.0 - cosang**2))
        if sinang < 1e-12:
            raise IzmestievError(f"adjacent vertices {i + 1} and {j + 1} are parallel")
        vi, vj = q.vertices[i], q.vertices[j]
        r = ridge_volume(dual, fov[vi], fov[vj])
        X[i, j] = X[j, i] = -r / (norms[i] * norms[j] * sinang)
    diag_resid = 0.0
    for i in range(n):
        rhs = -(X[i] @ V)
        X[i, i] = float(rhs @ V[i] / norms[i] ** 2)
        diag_resid = max(diag_resid, float(np.linalg.norm(X[i, i] * V[i] - rhs)))
    X *= R**-d
    res = {"symmetry_gap": 0.0, "diagonal_lstsq_residual": diag_resid * R**-d}
    if d == 2:
        res["ridge_measure"] = "counting"
    return IzmestievMatrix(X, "ridge_formula", None, origin, res)


@dataclass
class AuditReport:
    checks: dict
    tol: float

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks.values())

    def to_dict(self) -> dict:
        return {"tol": self.tol, "passed": self.passed, "checks": self.checks}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def audit(X: IzmestievMatrix, p: Polytope, tol: float = DEFAULT_AUDIT_TOL) -> AuditReport:
    """Check the five structural properties of X against the skeleton of p.

    Margins are positive when a check passes with room to spare.
    """
    M = np.asarray(X.X, dtype=float)
    G = skeleton_graph(p)
    Psi = p.coords - X.origin
    n, d = Psi.shape
    if M.shape != (n, n):
        raise IzmestievError(f"X is {M.shape} but the polytope has {n} vertices")
    checks = {}
    A = G.adjacency.astype(bool)
    off = ~A & ~np.eye(n, dtype=bool)

    edge_vals = M[A]
    worst_edge = float(edge_vals.max()) if edge_vals.size else -np.inf
    checks["negative_on_edges"] = {"pass": bool(worst_edge < 0), "margin": -worst_edge}

    off_vals = np.abs(np.where(off, M, 0.0))
    k = int(np.argmax(off_vals))
    worst_off = float(off_vals.flat[k])
    entry = {"pass": bool(worst_off <= tol), "margin": tol - worst_off}
    if not entry["pass"]:
        a, b = divmod(k, n)
        entry["pair"] = [min(a, b) + 1, max(a, b) + 1]
    checks["zero_off_edges"] = entry

    kr = float(np.linalg.norm(M @ Psi) / np.linalg.norm(Psi))
    checks["kernel_contains_coordinates"] = {
        "pass": bool(kr <= tol), "margin": tol - kr, "residual": kr,
        "relative": kr / max(np.linalg.norm(M, 2), 1e-300),
    }

    w = np.linalg.eigvalsh(0.5 * (M + M.T))
    scale = max(float(np.max(np.abs(w))), 1e-300)
    thresh = tol * scale
    nneg = int(np.sum(w < -thresh))
    # simple: the second-smallest eigenvalue sits clearly above the threshold
    gap = float(w[1] + thresh) if n > 1 else np.inf
    checks["one_negative_eigenvalue"] = {"pass": bool(nneg == 1), "margin": min(-w[0] - thresh, gap),
                                         "count": nneg}

    sv = np.linalg.svd(M, compute_uv=False)
    kdim = int(np.sum(sv <= thresh))
    nearest = np.sort(np.abs(sv - thresh))
    checks["kernel_dimension"] = {"pass": bool(kdim == d), "margin": float(nearest[0]) if kdim == d else 0.0,
                                  "dimension": kdim, "expected": d}
    return AuditReport(checks, tol)


def theta2_criterion(X: IzmestievMatrix, g: Graph, tol: float = DEFAULT_CRITERION_TOL,
                     p: Polytope | None = None) -> Certificate:
    """Constant diagonal and constant edge weights imply a theta_2-spectral polytope.

    Never returns ``not_spectral``: failure of the hypotheses is reported as
    inconclusive. The edge weight magnitude beta is the negated mean edge
    entry, so theta_2 = alpha / beta for X = alpha I - beta A.
    """
    M = np.asarray(X.X, dtype=float)
    if M.shape != (g.n, g.n):
        raise IzmestievError(f"X is {M.shape} but the graph has {g.n} vertices")
    scale = float(np.max(np.abs(M)))
    diag = np.diag(M)
    edges = np.array([M[i, j] for i, j in sorted(g.edges)])
    dspread = float(diag.max() - diag.min())
    espread = float(edges.max() - edges.min()) if edges.size else 0.0
    res = {
        "diagonal_spread": dspread / scale,
        "diagonal_spread_threshold": tol,
        "edge_spread": espread / scale,
        "edge_spread_threshold": tol,
    }
    if dspread > tol * scale or espread > tol * scale or not edges.size:
        which = []
        if dspread > tol * scale:
            which.append("diagonal_not_constant")
        if espread > tol * scale:
            which.append("edge_weights_not_constant")
        if not edges.size:
            which.append("no_edges")
        return Certificate("inconclusive", None, None, res, None, ["criterion_inconclusive"] + which)
    alpha = float(diag.mean())
    beta = float(-edges.mean())
    theta = alpha / beta
    s = spectrum(g)
    res["theta_from_criterion"] = theta
    res["theta2_spectrum"] = s.groups[1].theta if len(s.groups) > 1 else None
    res["theta_mismatch"] = abs(theta - res["theta2_spectrum"]) if res["theta2_spectrum"] is not None else np.inf
    res["theta_mismatch_threshold"] = tol * max(1.0, abs(theta))
    witness = {"alpha": alpha, "beta": beta}
    reasons = []
    if p is not None:
        cert = is_spectral_polytope(p)
        res["certify_agrees"] = cert.kind == "spectral_polytope" and cert.k == 2
        if not res["certify_agrees"]:
            reasons.append("certify_disagrees")
    if res["theta_mismatch"] > res["theta_mismatch_threshold"]:
        reasons.append("theta_mismatch")
    return Certificate("spectral_polytope", theta, 2, res, witness, reasons)
