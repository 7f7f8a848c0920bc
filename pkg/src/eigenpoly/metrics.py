"""Edge length, circumradius and dual dihedral angles against their spectral predictions."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .geometry import Polytope, skeleton_graph
from .spectra import Spectrum, spectrum

UNIFORMITY_TOL = 1e-8


class MetricError(ValueError):
    pass


@dataclass
class MetricReport:
    edge_lengths: dict
    circumradius: float
    ratio: float
    predicted_ratio: float
    dihedral_angles: list
    predicted_angle: float
    gaps: dict
    applicable: bool
    degree: int
    theta2: float
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        angles = np.asarray(self.dihedral_angles)
        return {
            "edge_lengths": self.edge_lengths,
            "circumradius": self.circumradius,
            "ratio": self.ratio,
            "predicted_ratio": self.predicted_ratio,
            "dihedral_angle_min": float(angles.min()),
            "dihedral_angle_max": float(angles.max()),
            "predicted_angle": self.predicted_angle,
            "gaps": self.gaps,
            "applicable": self.applicable,
            "degree": self.degree,
            "theta2": self.theta2,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        rows = ["quantity,measured,predicted,gap",
                f"ratio,{self.ratio!r},{self.predicted_ratio!r},{self.gaps['ratio']!r}",
                f"cos_dihedral,{float(np.cos(np.max(self.dihedral_angles)))!r},"
                f"{float(np.cos(self.predicted_angle))!r},{self.gaps['cos_angle']!r}"]
        return "\n".join(rows) + "\n"


def metric_report(p: Polytope, s: Spectrum | None = None) -> MetricReport:
    """Measure l/r and the dual dihedral angles of p and compare with theta_2 and the degree.

    The origin is taken as the vertex barycenter. The dihedral angle of the
    dual between the facets of adjacent vertices v_i, v_j is pi minus the
    angle between v_i and v_j.
    """
    G = skeleton_graph(p)
    deg = G.regular_degree()
    if deg is None:
        raise MetricError("skeleton is not regular; the identities need a common degree")
    if s is None:
        s = spectrum(G)
    if len(s.groups) < 2:
        raise MetricError("spectrum has a single eigenvalue")
    theta2 = float(s.groups[1].theta)
    V = p.coords - p.coords.mean(axis=0)
    norms = np.linalg.norm(V, axis=1)
    E = np.array(sorted(G.edges))
    lengths = np.linalg.norm(V[E[:, 0]] - V[E[:, 1]], axis=1)
    cosang = np.einsum("ij,ij->i", V[E[:, 0]], V[E[:, 1]]) / (norms[E[:, 0]] * norms[E[:, 1]])
    angles = np.pi - np.arccos(np.clip(cosang, -1.0, 1.0))
    notes = []
    scale = float(norms.max())
    if np.ptp(lengths) > UNIFORMITY_TOL * scale:
        notes.append("edge_lengths_not_uniform")
    if np.ptp(norms) > UNIFORMITY_TOL * scale:
        notes.append("not_inscribed")
    r = float(norms.mean())
    ell = float(lengths.mean())
    lam2 = deg - theta2
    predicted_ratio = float(np.sqrt(2 * lam2 / deg))
    cos_pred = -theta2 / deg
    predicted_angle = float(np.arccos(np.clip(cos_pred, -1.0, 1.0)))
    gaps = {
        "ratio": abs(ell / r - predicted_ratio),
        "cos_angle": float(np.max(np.abs(np.cos(angles) - cos_pred))),
        "angle": float(np.max(np.abs(angles - predicted_angle))),
    }
    return MetricReport(
        edge_lengths={"min": float(lengths.min()), "max": float(lengths.max()), "mean": ell},
        circumradius=float(norms.max()),
        ratio=ell / r,
        predicted_ratio=predicted_ratio,
        dihedral_angles=[float(a) for a in angles],
        predicted_angle=predicted_angle,
        gaps=gaps,
        applicable=not notes,
        degree=deg,
        theta2=theta2,
        notes=notes,
    )
