"""Adjacency spectra grouped into eigenspaces, and eigenpolytope matrices."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .graphs import Graph

DEFAULT_GROUP_TOL = 1e-8
_SNAP_TOL = 1e-9


class SpectrumError(ValueError):
    pass


@dataclass(frozen=True)
class EigenGroup:
    theta: float
    multiplicity: int
    basis: np.ndarray  # n x multiplicity, orthonormal columns

    @property
    def snapped(self) -> float | None:
        """Nearest integer when theta is within 1e-9 of one (diagnostic only)."""
        r = round(self.theta)
        return float(r) if abs(self.theta - r) <= _SNAP_TOL else None


@dataclass(frozen=True)
class Spectrum:
    groups: tuple
    tol: float
    n: int
    source: str | None = None

    @property
    def thetas(self) -> np.ndarray:
        return np.array([grp.theta for grp in self.groups])

    @property
    def multiplicities(self) -> list:
        return [grp.multiplicity for grp in self.groups]

    def index_of(self, theta: float, tol: float | None = None) -> int | None:
        """1-based index of the group whose eigenvalue is within ``tol`` of ``theta``."""
        scale = max(1.0, float(np.max(np.abs(self.thetas)))) if self.groups else 1.0
        tol = (self.tol if tol is None else tol) * scale
        for k, grp in enumerate(self.groups, start=1):
            if abs(grp.theta - theta) <= tol:
                return k
        return None

    def table(self) -> list:
        return [(grp.theta, grp.multiplicity) for grp in self.groups]

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "n": self.n,
            "tol": self.tol,
            "groups": [
                {"k": k, "theta": grp.theta, "multiplicity": grp.multiplicity, "snapped": grp.snapped}
                for k, grp in enumerate(self.groups, start=1)
            ],
        }

    def to_csv(self) -> str:
        lines = ["k,theta,multiplicity"]
        lines += [f"{k},{grp.theta!r},{grp.multiplicity}" for k, grp in enumerate(self.groups, start=1)]
        return "\n".join(lines) + "\n"


def canonical_basis(B: np.ndarray) -> np.ndarray:
    """Basis of span(B) that depends on the subspace rather than on B.

    Column-pivoted QR of the orthogonal projector onto span(B); columns are
    then signed so that the first entry above 1e-12 in magnitude is positive.
    """
    B = np.asarray(B, dtype=float)
    n, m = B.shape
    if m == 0:
        return B.copy()
    Q, _ = np.linalg.qr(B)
    P = Q @ Q.T
    U, _, _ = scipy.linalg.qr(P, pivoting=True)
    U = U[:, :m].copy()
    for j in range(m):
        nz = np.nonzero(np.abs(U[:, j]) > 1e-12)[0]
        if len(nz) and U[nz[0], j] < 0:
            U[:, j] = -U[:, j]
    return U


def _matrix_of(g) -> tuple:
    if isinstance(g, Graph):
        return g.adjacency, g.name
    A = np.asarray(g, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or not np.allclose(A, A.T):
        raise SpectrumError("expected a Graph or a symmetric square matrix")
    return A, None


def spectrum(g, tol: float = DEFAULT_GROUP_TOL) -> Spectrum:
    """Eigenvalues of the adjacency matrix, merged into groups, descending."""
    A, source = _matrix_of(g)
    n = A.shape[0]
    if n < 1:
        raise SpectrumError("spectrum of the empty graph is undefined")
    try:
        w, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise SpectrumError(f"eigensolver failed: {exc}") from exc
    order = np.argsort(-w, kind="stable")
    w, V = w[order], V[:, order]
    thresh = tol * max(1.0, float(np.linalg.norm(A, 2)))
    groups = []
    start = 0
    for i in range(1, n + 1):
        if i == n or w[start] - w[i] > thresh:
            block = V[:, start:i]
            theta = float(np.mean(w[start:i]))
            groups.append(EigenGroup(theta, i - start, canonical_basis(block)))
            start = i
    return Spectrum(tuple(groups), tol, n, source)


@dataclass(frozen=True)
class Eigenmatrix:
    entries: np.ndarray  # n x d
    theta: float
    k: int
    source: str | None = None

    @property
    def d(self) -> int:
        return self.entries.shape[1]

    def to_csv(self) -> str:
        rows = [",".join(repr(float(x)) for x in row) for row in self.entries]
        return "\n".join(rows) + "\n"


def eigenmatrix(s: Spectrum, k: int) -> Eigenmatrix:
    """Orthonormal basis of the k-th eigenspace (1-based, descending) as columns."""
    if not 1 <= k <= len(s.groups):
        raise SpectrumError(f"eigenvalue index {k} out of range 1..{len(s.groups)}")
    grp = s.groups[k - 1]
    return Eigenmatrix(grp.basis.copy(), grp.theta, k, s.source)


def laplacian_gap(s: Spectrum, degree: int | None) -> float:
    """Second-smallest Laplacian eigenvalue of a regular graph: deg - theta_2."""
    if degree is None:
        raise SpectrumError("laplacian_gap needs a regular graph")
    if len(s.groups) < 2:
        raise SpectrumError("graph has a single eigenvalue; theta_2 undefined")
    return float(degree - s.groups[1].theta)
