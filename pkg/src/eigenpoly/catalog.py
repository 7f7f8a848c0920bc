"""Named graphs and polytopes with expected verdicts, and the harness that checks them."""
from __future__ import annotations

import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .certify import is_balanced, is_spectral_graph, is_spectral_polytope
from .geometry import DEFAULT_HULL_TOL, Polytope, convex_hull, skeleton_graph
from .graphs import parse_generator_spec, transitivity
from .izmestiev import DEFAULT_CRITERION_TOL, audit, izmestiev_ridge, theta2_criterion
from .metrics import metric_report
from .spectra import DEFAULT_GROUP_TOL, eigenmatrix, spectrum

SCALE_CLASSES = ("fast", "slow", "stretch")
IZMESTIEV_MAX_DIM = 4
IZMESTIEV_MAX_N = 40
PHI = (1 + 5**0.5) / 2


def _cube():
    return np.array(list(itertools.product([1.0, -1.0], repeat=3)))


def _cross_polytope(d=3):
    return np.vstack([np.eye(d), -np.eye(d)])


def _icosahedron():
    pts = []
    for a, b in itertools.product([1.0, -1.0], repeat=2):
        pts += [(0, a, b * PHI), (a, b * PHI, 0), (b * PHI, 0, a)]
    return np.array(sorted(pts))


def _dodecahedron():
    pts = [tuple(v) for v in _cube()]
    for a, b in itertools.product([1.0, -1.0], repeat=2):
        pts += [(0, a / PHI, b * PHI), (a / PHI, b * PHI, 0), (b * PHI, 0, a / PHI)]
    return np.array(sorted(pts))


def _rhombic_dodecahedron():
    return np.vstack([_cube(), 2 * np.eye(3), -2 * np.eye(3)])


def _rhombic_triacontahedron():
    """Icosahedron vertices plus face directions, scaled so every rhombus is planar."""
    ico = _icosahedron()
    D = np.linalg.norm(ico[:, None] - ico[None], axis=2)
    edge = D[D > 1e-9].min()
    A = np.abs(D - edge) < 1e-9
    faces = sorted({tuple(sorted(t)) for t in itertools.combinations(range(12), 3)
                    if A[t[0], t[1]] and A[t[1], t[2]] and A[t[0], t[2]]})
    cents = np.array([ico[list(f)].mean(axis=0) for f in faces])
    # a rhombus a, c1, b, c2 is planar when its diagonals bisect: c1 + c2 = a + b
    a, b = next((i, j) for i, j in itertools.combinations(range(12), 2) if A[i, j])
    shared = [k for k, f in enumerate(faces) if a in f and b in f]
    s = np.linalg.norm(ico[a] + ico[b]) / np.linalg.norm(cents[shared[0]] + cents[shared[1]])
    return np.vstack([ico, s * cents])


def _pentagon():
    t = 2 * np.pi * np.arange(5) / 5
    return np.c_[np.cos(t), np.sin(t)]


def _prism_3():
    t = 2 * np.pi * np.arange(3) / 3
    tri = np.c_[np.cos(t), np.sin(t)] / np.sqrt(3)  # unit edge length
    return np.vstack([np.c_[tri, np.full(3, 0.5)], np.c_[tri, np.full(3, -0.5)]])


def _cyclic_4_7():
    t = 2 * np.pi * np.arange(7) / 7
    return np.c_[np.sin(t), np.cos(t), np.sin(2 * t), np.cos(2 * t)]


POLYTOPE_BUILDERS = {
    "cube": _cube,
    "cross_polytope": _cross_polytope,
    "dodecahedron": _dodecahedron,
    "icosahedron": _icosahedron,
    "pentagon": _pentagon,
    "prism_3": _prism_3,
    "rhombic_dodecahedron": _rhombic_dodecahedron,
    "rhombic_triacontahedron": _rhombic_triacontahedron,
    "cyclic_4_7": _cyclic_4_7,
}


def polytope_points(name: str) -> np.ndarray:
    """Vertex coordinates of a named catalog polytope, translated to barycenter 0."""
    try:
        P = POLYTOPE_BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown polytope {name!r}; known: {sorted(POLYTOPE_BUILDERS)}") from None
    return P - P.mean(axis=0)


def catalog_polytope(name: str, tol: float = DEFAULT_HULL_TOL) -> Polytope:
    return convex_hull(polytope_points(name), tol=tol)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    source: str
    scale_class: str
    expected: dict
    note: str | None = None


def load_manifest() -> list:
    text = resources.files("eigenpoly.data").joinpath("catalog.json").read_text()
    data = json.loads(text)
    return [CatalogEntry(e["name"], e["kind"], e["source"], e["scale_class"], e["expected"], e.get("note"))
            for e in data["entries"]]


@dataclass
class EntryResult:
    name: str
    scale_class: str
    computed: dict
    expected: dict
    mismatches: list
    error: str | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.error is None and not self.mismatches

    def to_dict(self, timing: bool = False) -> dict:
        d = {"name": self.name, "scale_class": self.scale_class, "computed": self.computed,
             "expected": self.expected, "mismatches": self.mismatches, "error": self.error,
             "passed": self.passed}
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


def _izmestiev_block(P: Polytope, crit_tol: float) -> dict:
    X = izmestiev_ridge(P)
    rep = audit(X, P)
    cert = theta2_criterion(X, skeleton_graph(P), crit_tol, p=P)
    out = {"audit_passed": rep.passed, "criterion": "holds" if cert.kind == "spectral_polytope" else "inconclusive"}
    if cert.kind == "spectral_polytope":
        out["criterion_theta2"] = cert.theta
        out["criterion_consistent"] = not cert.reasons
    return out


def _metrics_block(P: Polytope, s) -> dict:
    m = metric_report(P, s)
    return {"applicable": m.applicable, "ratio": m.ratio, "predicted_ratio": m.predicted_ratio,
            "ratio_gap": m.gaps["ratio"], "cos_angle_gap": m.gaps["cos_angle"]}


def _run_graph(entry: CatalogEntry, tols: dict) -> dict:
    g = parse_generator_spec(entry.source)
    s = spectrum(g, tols["group"])
    Phi = eigenmatrix(s, 2)
    cert = is_spectral_graph(g, 2, tols["hull"], tols["group"], cross_check=entry.scale_class != "stretch")
    tp = transitivity(g)
    out = {
        "n": g.n,
        "theta2": Phi.theta,
        "dim": Phi.d,
        "spectral_at_k": {"2": cert.kind == "spectral_graph"},
        "certificate_kind": cert.kind,
        "reasons": list(cert.reasons),
        "transitivity": {"vertex": tp.vertex_transitive, "edge": tp.edge_transitive,
                         "arc": tp.arc_transitive, "distance": tp.distance_transitive},
    }
    if "routes_agree" in cert.residuals:
        out["routes_agree"] = cert.residuals["routes_agree"]
    if cert.kind == "spectral_graph":
        P = convex_hull(Phi.entries, tols["hull"])
        out["f_vector"] = list(P.f_vector_partial())
        rt = is_spectral_polytope(P)
        out["round_trip"] = rt.kind == "spectral_polytope" and abs(rt.theta - Phi.theta) <= 1e-6
        if tp.vertex_transitive and tp.edge_transitive:
            out["metrics"] = _metrics_block(P, s)
        if P.dim <= IZMESTIEV_MAX_DIM and g.n <= IZMESTIEV_MAX_N:
            out["izmestiev"] = _izmestiev_block(P, tols["criterion"])
    return out


def _run_polytope(entry: CatalogEntry, tols: dict) -> dict:
    P = convex_hull(polytope_points(entry.source), tols["hull"])
    G = skeleton_graph(P)
    s = spectrum(G, tols["group"])
    cert = is_spectral_polytope(P, group_tol=tols["group"])
    bal = is_balanced(P.coords, G)
    tp = transitivity(G)
    out = {
        "f_vector": list(P.f_vector_partial()),
        "dim": P.dim,
        "balanced": bal.kind == "balanced",
        "balanced_theta": bal.theta,
        "spectral": cert.kind == "spectral_polytope",
        "certificate_kind": cert.kind,
        "theta_index": cert.k,
        "reasons": list(cert.reasons),
        "transitivity": {"vertex": tp.vertex_transitive, "edge": tp.edge_transitive},
    }
    iz = _izmestiev_block(P, tols["criterion"])
    out["izmestiev"] = iz
    out["criterion"] = iz["criterion"]
    if cert.kind == "spectral_polytope" and tp.vertex_transitive and tp.edge_transitive:
        out["metrics"] = _metrics_block(P, s)
    return out


def _compare(expected: dict, computed: dict, path: str = "") -> list:
    bad = []
    for key, want in expected.items():
        where = f"{path}{key}"
        if key not in computed:
            bad.append(f"{where}: missing")
        elif isinstance(want, dict):
            bad += _compare(want, computed[key], where + ".")
        elif computed[key] != want:
            bad.append(f"{where}: expected {want!r}, got {computed[key]!r}")
    return bad


def _consistency(computed: dict) -> list:
    """Checks that hold for every entry regardless of expectations."""
    bad = []
    if computed.get("routes_agree") is False:
        bad.append("hull and argmax routes disagree")
    if computed.get("round_trip") is False:
        bad.append("round trip through is_spectral_polytope failed")
    iz = computed.get("izmestiev")
    if iz is not None:
        if not iz["audit_passed"]:
            bad.append("Izmestiev audit failed")
        if iz.get("criterion_consistent") is False:
            bad.append("criterion holds but certification disagrees")
    m = computed.get("metrics")
    if m is not None and m["applicable"] and (m["ratio_gap"] > 1e-8 or m["cos_angle_gap"] > 1e-8):
        bad.append("metric identity violated")
    if computed.get("certificate_kind") == "not_spectral" and not computed.get("reasons"):
        bad.append("negative verdict without a reason code")
    return bad


def run_entry(entry: CatalogEntry, tols: dict | None = None) -> EntryResult:
    tols = {**default_tolerances(), **(tols or {})}
    t0 = time.perf_counter()
    try:
        runner = _run_graph if entry.kind == "graph" else _run_polytope
        computed = runner(entry, tols)
        mismatches = _compare(entry.expected, computed) + _consistency(computed)
        err = None
    except Exception as exc:  # collected per entry; the run continues
        computed, mismatches, err = {}, [], f"{type(exc).__name__}: {exc}"
    return EntryResult(entry.name, entry.scale_class, computed, entry.expected, mismatches, err,
                       time.perf_counter() - t0)


def default_tolerances() -> dict:
    return {"group": DEFAULT_GROUP_TOL, "hull": DEFAULT_HULL_TOL, "criterion": DEFAULT_CRITERION_TOL}


@dataclass
class CatalogSummary:
    results: list
    classes: tuple
    tolerances: dict = field(default_factory=default_tolerances)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self, timing: bool = False) -> dict:
        return {"classes": list(self.classes), "tolerances": self.tolerances, "passed": self.passed,
                "entries": [r.to_dict(timing) for r in self.results]}

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=1)

    def table(self) -> str:
        lines = [f"{'entry':28s} {'class':8s} {'verdict':18s} {'dim':>4s}  result"]
        for r in self.results:
            c = r.computed
            verdict = c.get("certificate_kind", "error")
            status = "PASS" if r.passed else "FAIL " + "; ".join(r.mismatches or [r.error or ""])
            lines.append(f"{r.name:28s} {r.scale_class:8s} {verdict:18s} {c.get('dim', '-')!s:>4s}  {status}")
        return "\n".join(lines)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("EIGENPOLY_THREADS", "1")))
    except ValueError:
        return 1


def run_catalog(classes=("fast", "slow"), tols: dict | None = None, names=None) -> CatalogSummary:
    """Run every manifest entry whose scale class is in ``classes`` (and name in ``names``)."""
    if isinstance(classes, str):
        classes = (classes,)
    unknown = set(classes) - set(SCALE_CLASSES)
    if unknown:
        raise ValueError(f"unknown scale class {sorted(unknown)}")
    tols = {**default_tolerances(), **(tols or {})}
    entries = [e for e in load_manifest() if e.scale_class in classes and (names is None or e.name in names)]
    workers = _workers()
    if workers > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_entry, entries, [tols] * len(entries)))
    else:
        results = [run_entry(e, tols) for e in entries]
    return CatalogSummary(results, tuple(classes), tols)
