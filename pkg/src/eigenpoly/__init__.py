"""Eigenpolytopes of graphs and spectral certification of polytopes."""

__version__ = "0.1.0"

from .certify import Certificate, is_balanced, is_spectral_graph, is_spectral_polytope  # noqa: E402
from .estimators import EigenpolytopeEmbedding, IzmestievEstimator  # noqa: E402
from .geometry import convex_hull, polar_dual, volume  # noqa: E402
from .graphs import Graph, generate  # noqa: E402
from .spectra import eigenmatrix, spectrum  # noqa: E402

__all__ = [
    "Certificate",
    "EigenpolytopeEmbedding",
    "Graph",
    "IzmestievEstimator",
    "convex_hull",
    "eigenmatrix",
    "generate",
    "is_balanced",
    "is_spectral_graph",
    "is_spectral_polytope",
    "polar_dual",
    "spectrum",
    "volume",
]
