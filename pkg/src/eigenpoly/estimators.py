"""scikit-learn style wrappers: graph -> eigenpolytope coordinates, polytope -> Izmestiev matrix."""
from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .certify import is_spectral_graph
from .geometry import DEFAULT_HULL_TOL, convex_hull
from .izmestiev import DEFAULT_STEP, audit, izmestiev_fd, izmestiev_ridge
from .spectra import DEFAULT_GROUP_TOL, eigenmatrix, spectrum
from .validation import check_adjacency, check_points


class EigenpolytopeEmbedding(TransformerMixin, BaseEstimator):
    """Embed the vertices of a graph as the rows of a theta_k eigenbasis.

    ``fit`` takes a Graph or adjacency matrix; ``transform`` returns the
    n x d coordinate matrix (the input is only used to check the vertex count).
    """

    def __init__(self, k: int = 2, group_tol: float = DEFAULT_GROUP_TOL, hull_tol: float = DEFAULT_HULL_TOL,
                 certify: bool = False):
        self.k = k
        self.group_tol = group_tol
        self.hull_tol = hull_tol
        self.certify = certify

    def fit(self, X, y=None):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        g = check_adjacency(X)
        self.graph_ = g
        self.spectrum_ = spectrum(g, self.group_tol)
        Phi = eigenmatrix(self.spectrum_, self.k)
        self.embedding_ = Phi.entries
        self.theta_ = Phi.theta
        self.n_components_ = Phi.d
        self.polytope_ = convex_hull(Phi.entries, tol=self.hull_tol)
        self.certificate_ = is_spectral_graph(g, self.k, self.hull_tol, self.group_tol) if self.certify else None
        return self

    def transform(self, X):
        check_is_fitted(self, "embedding_")
        g = check_adjacency(X)
        if g.n != self.graph_.n:
            raise ValueError(f"fitted on {self.graph_.n} vertices, got {g.n}")
        return self.embedding_.copy()


class IzmestievEstimator(BaseEstimator):
    """Fit the Izmestiev matrix of the convex hull of a point set."""

    def __init__(self, method: str = "ridge", h: float = DEFAULT_STEP, hull_tol: float = DEFAULT_HULL_TOL):
        self.method = method
        self.h = h
        self.hull_tol = hull_tol

    def fit(self, X, y=None):
        if self.method not in ("ridge", "fd"):
            raise ValueError(f"method must be 'ridge' or 'fd', got {self.method!r}")
        pts = check_points(X, min_points=3)
        P = convex_hull(pts, tol=self.hull_tol)
        M = izmestiev_fd(P, self.h) if self.method == "fd" else izmestiev_ridge(P)
        self.polytope_ = P
        self.matrix_ = M
        self.X_ = M.X
        self.audit_ = audit(M, P)
        return self
