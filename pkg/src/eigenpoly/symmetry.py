"""Graph automorphisms acting as orthogonal maps on eigenpolytopes, and congruence checks."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import orthogonal_procrustes

from .certify import Certificate, is_spectral_graph
from .geometry import Polytope
from .graphs import AutomorphismError, Graph, automorphisms, is_automorphism
from .spectra import eigenmatrix, spectrum

ENUMERATION_CAP = 100_000
SAMPLED_WORDS = 1000
EQUIVARIANCE_TOL = 1e-7
CONGRUENCE_TOL = 1e-6


class SymmetryError(ValueError):
    pass


@dataclass(frozen=True)
class RealizedSymmetry:
    sigma: tuple
    T: np.ndarray
    orthogonality_gap: float
    equivariance_gap: float

    def to_dict(self) -> dict:
        return {
            "sigma": [s + 1 for s in self.sigma],
            "T": self.T.tolist(),
            "orthogonality_gap": self.orthogonality_gap,
            "equivariance_gap": self.equivariance_gap,
        }


def _transform(Phi: np.ndarray, sigma) -> np.ndarray:
    # Pi e_i = e_sigma(i), so (Pi Phi)_j = Phi_{sigma^-1(j)} and T v_i = v_sigma(i)
    inv = np.empty(len(sigma), dtype=int)
    inv[np.asarray(sigma)] = np.arange(len(sigma))
    return Phi.T @ Phi[inv]


def induced_symmetry(Phi, sigma, g: Graph | None = None) -> RealizedSymmetry:
    """T = Phi^T Pi Phi for the permutation sigma (0-based image tuple)."""
    Phi = np.asarray(getattr(Phi, "entries", Phi), dtype=float)
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(Phi.shape[0])):
        raise SymmetryError("sigma is not a permutation of the rows")
    if g is not None and not is_automorphism(g, sigma):
        raise SymmetryError("sigma is not an automorphism of the graph")
    T = _transform(Phi, sigma)
    d = T.shape[0]
    ortho = float(np.linalg.norm(T.T @ T - np.eye(d)))
    equiv = float(np.max(np.linalg.norm(Phi @ T.T - Phi[list(sigma)], axis=1)))
    return RealizedSymmetry(sigma, T, ortho, equiv)


def _compose(a, b) -> tuple:
    return tuple(a[b[i]] for i in range(len(b)))


@dataclass
class GroupRealization:
    k: int
    generators: list
    group_order: int
    images: int | None
    homomorphism_gap: float
    injective: bool | None
    sampled: bool
    certificate: Certificate | None

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "generators": [r.to_dict() for r in self.generators],
            "group_order": self.group_order,
            "distinct_images": self.images,
            "homomorphism_gap": self.homomorphism_gap,
            "injective": self.injective,
            "sampled": self.sampled,
            "spectral": None if self.certificate is None else self.certificate.kind,
        }


def realize_group(g: Graph, k: int = 2, mode: str = "auto", cap: int = ENUMERATION_CAP,
                  words: int = SAMPLED_WORDS, seed: int = 0,
                  certificate: Certificate | None = None) -> GroupRealization:
    """Images T_sigma of Aut(g) on the k-th eigenpolytope.

    Injectivity is always measured. ``mode="isomorphism"`` additionally
    requires a spectral certificate (computed when not supplied) and raises
    without one; ``"homomorphism"`` skips certification. Groups above
    ``cap`` are probed with random words.
    """
    if mode not in ("auto", "isomorphism", "homomorphism"):
        raise SymmetryError(f"unknown mode {mode!r}")
    Phi = eigenmatrix(spectrum(g), k).entries
    if certificate is None and mode != "homomorphism":
        certificate = is_spectral_graph(g, k, cross_check=False)
    spectral = certificate is not None and certificate.kind == "spectral_graph"
    if mode == "isomorphism" and not spectral:
        raise SymmetryError("isomorphism mode needs a spectral_graph certificate")
    aut = automorphisms(g)
    gens = [induced_symmetry(Phi, s) for s in aut.generators]
    rng = np.random.default_rng(seed)
    gap = 0.0
    images = None
    sampled = aut.order > cap
    if not sampled:
        elems = aut.elements(cap)
        Ts = {e: _transform(Phi, e) for e in elems}
        for _ in range(min(words, len(elems) ** 2)):
            a = elems[rng.integers(len(elems))]
            b = elems[rng.integers(len(elems))]
            gap = max(gap, float(np.linalg.norm(Ts[_compose(a, b)] - Ts[a] @ Ts[b])))
        keys = {tuple(np.round(T, 6).ravel()) for T in Ts.values()}
        images = len(keys)
        injective = images == len(elems)
    else:
        identity = tuple(range(g.n))
        I = np.eye(Phi.shape[1])
        injective = True
        for _ in range(words):
            length = int(rng.integers(1, 12))
            w, Tw = identity, I
            for _ in range(length):
                r = gens[rng.integers(len(gens))]
                w = _compose(r.sigma, w)
                Tw = r.T @ Tw
            gap = max(gap, float(np.linalg.norm(_transform(Phi, w) - Tw)))
            if w != identity and np.allclose(Tw, I, atol=1e-6):
                injective = False
    return GroupRealization(k, gens, aut.order, images, gap, injective, sampled, certificate)


@dataclass(frozen=True)
class Congruence:
    congruent: bool
    residual: float
    Q: np.ndarray


def _normalized(V: np.ndarray) -> np.ndarray:
    W = V - V.mean(axis=0)
    r = float(np.max(np.linalg.norm(W, axis=1)))
    if r == 0:
        raise SymmetryError("point set collapses to a single point")
    return W / r


def congruence_check(P, Q, matching=None, tol: float = CONGRUENCE_TOL) -> Congruence:
    """Orthogonal Procrustes fit of Q onto P after centering and unit circumradius.

    ``matching[i]`` is the row of Q paired with row i of P (identity by default).
    Both inputs may be polytopes (their vertex rows are used) or arrays.
    """
    A = P.coords if isinstance(P, Polytope) else np.asarray(P, dtype=float)
    B = Q.coords if isinstance(Q, Polytope) else np.asarray(Q, dtype=float)
    if A.shape[0] != B.shape[0]:
        raise SymmetryError(f"vertex counts differ: {A.shape[0]} vs {B.shape[0]}")
    if A.shape[1] != B.shape[1]:
        raise SymmetryError(f"dimensions differ: {A.shape[1]} vs {B.shape[1]}")
    if matching is not None:
        B = B[np.asarray(matching, dtype=int)]
    A, B = _normalized(A), _normalized(B)
    R, _ = orthogonal_procrustes(B, A)
    resid = float(np.linalg.norm(B @ R - A) / np.sqrt(A.shape[0]))
    return Congruence(resid <= tol, resid, R)


__all__ = [
    "AutomorphismError",
    "Congruence",
    "GroupRealization",
    "RealizedSymmetry",
    "SymmetryError",
    "congruence_check",
    "induced_symmetry",
    "realize_group",
]
