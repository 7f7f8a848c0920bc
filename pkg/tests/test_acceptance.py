"""One test per acceptance criterion; each records a pass/fail line printed in the terminal summary."""
import time
from contextlib import contextmanager

import numpy as np
import pytest
from scipy.stats import special_ortho_group

import conftest
from conftest import random_sphere_points
from eigenpoly.catalog import catalog_polytope, load_manifest, run_catalog
from eigenpoly.certify import is_balanced, is_spectral_graph, is_spectral_polytope, reconstruct_from_subspace
from eigenpoly.geometry import convex_hull, skeleton_graph, volume
from eigenpoly.graphs import parse_generator_spec, transitivity
from eigenpoly.izmestiev import audit, izmestiev_fd, izmestiev_ridge, theta2_criterion
from eigenpoly.metrics import metric_report
from eigenpoly.spectra import eigenmatrix, spectrum
from eigenpoly.symmetry import congruence_check, realize_group


@contextmanager
def criterion(number, title, budget):
    details = []
    t0 = time.perf_counter()
    ok = False
    try:
        yield details
        ok = True
    finally:
        dt = time.perf_counter() - t0
        within = dt <= budget
        status = "PASS" if ok and within else "FAIL"
        extra = "; ".join(details)
        conftest.ACCEPTANCE_LINES.append(
            f"[{status}] {number}. {title} ({dt:.1f} s, budget {budget:g} s){': ' + extra if extra else ''}")
    assert within, f"criterion {number} took {dt:.1f} s, budget {budget} s"


def test_01_cube_pipeline():
    with criterion(1, "cube pipeline", 1.0) as info:
        g = parse_generator_spec("hypercube:3")
        s = spectrum(g, 1e-8)
        table = [(round(t), m) for t, m in s.table()]
        assert table == [(3, 1), (1, 3), (-1, 3), (-3, 1)]
        assert max(abs(t - round(t)) for t, _ in s.table()) < 1e-12
        P = convex_hull(eigenmatrix(s, 2).entries)
        assert P.f_vector_partial() == (8, 12, 6)
        assert is_spectral_graph(g, 2).kind == "spectral_graph"
        info.append(f"spectrum {table}, f-vector {P.f_vector_partial()}")


def test_02_negative_controls():
    with criterion(2, "negative controls", 60.0) as info:
        prism = parse_generator_spec("prism:3")
        s = spectrum(prism)
        assert max(m for _, m in s.table()) < 3
        for k in range(1, len(s.groups) + 1):
            c = is_spectral_graph(prism, k)
            assert c.kind == "not_spectral" and c.reasons
        assert "multiplicity_obstruction" in is_spectral_polytope(catalog_polytope("prism_3")).reasons
        c5 = parse_generator_spec("cycle:5")
        assert is_spectral_graph(c5, 2).kind == "spectral_graph"
        c = is_spectral_graph(c5, 3)
        assert c.kind == "not_spectral" and "edge_not_realized" in c.reasons
        pair = c.witness["edge_not_realized"][0]
        assert c5.has_edge(pair[0] - 1, pair[1] - 1)
        for name in ("petersen", "holt"):
            c = is_spectral_graph(parse_generator_spec(name), 2)
            assert c.kind == "not_spectral" and "degree_obstruction" in c.reasons
        info.append(f"C5 k=3 unrealized edge {pair}")


def test_03_izmestiev_audit():
    rng = np.random.default_rng(7)
    polys = [("cube", catalog_polytope("cube")), ("octahedron", catalog_polytope("cross_polytope")),
             ("prism(3)", catalog_polytope("prism_3")), ("pentagon", catalog_polytope("pentagon"))]
    polys += [(f"random{i}", convex_hull(random_sphere_points(rng, 10, 3))) for i in range(5)]
    with criterion(3, "Izmestiev audit", 120.0) as info:
        worst_kernel = worst_agree = 0.0
        for name, P in polys:
            fd = izmestiev_fd(P, h=1e-3)
            rep = audit(fd, P, tol=1e-4)
            assert rep.passed, (name, rep.to_dict())
            worst_kernel = max(worst_kernel, rep.checks["kernel_contains_coordinates"]["residual"])
            agree = float(np.abs(fd.X - izmestiev_ridge(P).X).max())
            assert agree <= 1e-3, (name, agree)
            worst_agree = max(worst_agree, agree)
        info.append(f"max kernel residual {worst_kernel:.1e}, max fd-ridge gap {worst_agree:.1e}")


def test_04_criterion_soundness():
    with criterion(4, "criterion soundness", 120.0) as info:
        for name in ("cube", "cross_polytope", "dodecahedron", "icosahedron", "rhombic_dodecahedron"):
            P = catalog_polytope(name)
            G = skeleton_graph(P)
            c = theta2_criterion(izmestiev_ridge(P), G)
            assert c.kind == "spectral_polytope", name
            cert = is_spectral_polytope(P)
            assert cert.kind == "spectral_polytope" and cert.k == 2, name
            assert abs(c.theta - spectrum(G).groups[1].theta) <= 1e-6, name
            info.append(f"{name} theta={c.theta:.6f}")
        for name in ("prism_3", "rhombic_triacontahedron"):
            P = catalog_polytope(name)
            assert theta2_criterion(izmestiev_ridge(P), skeleton_graph(P)).kind == "inconclusive", name
        assert is_spectral_polytope(catalog_polytope("rhombic_triacontahedron")).kind == "not_spectral"


def test_05_metric_identities():
    with criterion(5, "metric identities", 30.0) as info:
        checked = []
        for e in load_manifest():
            if e.kind != "polytope":
                continue
            P = catalog_polytope(e.source)
            tp = transitivity(skeleton_graph(P))
            if not (tp.vertex_transitive and tp.edge_transitive):
                continue
            if is_spectral_polytope(P).kind != "spectral_polytope":
                continue
            m = metric_report(P)
            assert m.gaps["ratio"] <= 1e-8 and m.gaps["cos_angle"] <= 1e-8, e.name
            checked.append(e.source)
        cube = metric_report(catalog_polytope("cube"))
        assert abs(cube.ratio - 2 / np.sqrt(3)) <= 1e-8
        assert abs(cube.predicted_angle - np.arccos(-1 / 3)) <= 1e-8
        assert max(abs(a - np.arccos(-1 / 3)) for a in cube.dihedral_angles) <= 1e-8
        info.append("checked " + ", ".join(checked))


def test_06_symmetry_realization():
    with criterion(6, "symmetry realization", 10.0) as info:
        r = realize_group(parse_generator_spec("hypercube:3"), 2)
        assert r.group_order == 48 and r.images == 48 and r.injective
        assert r.homomorphism_gap <= 1e-7
        assert max(gen.equivariance_gap for gen in r.generators) <= 1e-7
        assert max(gen.orthogonality_gap for gen in r.generators) <= 1e-7
        info.append(f"48 distinct images, homomorphism gap {r.homomorphism_gap:.1e}")


def test_07_classification_harness():
    with criterion(7, "classification harness", 1200.0) as info:
        pos = [e for e in load_manifest()
               if e.kind == "graph" and e.expected.get("spectral_at_k", {}).get("2")]
        summary = run_catalog(("fast", "slow", "stretch"), names=[e.name for e in pos])
        assert len(summary.results) == len(pos)
        for r in summary.results:
            assert r.passed, (r.name, r.mismatches, r.error)
            assert r.computed["certificate_kind"] == "spectral_graph", r.name
            assert r.computed["transitivity"]["distance"], r.name
        got = {r.name: (r.computed["dim"], r.computed["n"]) for r in summary.results}
        assert got["hamming_2_3"] == (4, 9)
        assert got["halved_cube_5"] == (5, 16)
        assert got["schlafli"] == (6, 27)
        info.append(f"{len(pos)} entries incl. gosset {got['gosset']}")


def test_08_reconstruction_determinism():
    g = parse_generator_spec("icosahedron")
    Phi = eigenmatrix(spectrum(g), 2).entries
    rng = np.random.default_rng(11)
    with criterion(8, "reconstruction determinism", 10.0) as info:
        runs = []
        for seed in (1, 2):
            Q = special_ortho_group.rvs(3, random_state=seed)
            rec = reconstruct_from_subspace(Phi @ Q)
            assert rec.graph is not None and rec.graph.edges == g.edges
            runs.append(rec.polytope.coords)
        c = congruence_check(runs[0], runs[1])
        assert c.congruent and c.residual <= 1e-6
        # eigenbasis recomputed after a random relabelling of the graph
        perm = rng.permutation(g.n)
        h = g.relabel(perm)
        rec = reconstruct_from_subspace(eigenmatrix(spectrum(h), 2).entries)
        c2 = congruence_check(runs[0], rec.polytope.coords, matching=perm)
        assert c2.congruent and c2.residual <= 1e-6
        info.append(f"Procrustes residuals {c.residual:.1e}, {c2.residual:.1e}")


def _monte_carlo_volume(P, rng, samples=10**7, chunk=10**6):
    V = P.coords
    lo, hi = V.min(axis=0), V.max(axis=0)
    N = np.array([f.normal for f in P.facets])
    b = np.array([f.offset for f in P.facets])
    inside = 0
    for _ in range(samples // chunk):
        X = rng.uniform(lo, hi, size=(chunk, V.shape[1]))
        inside += int(np.all(X @ N.T <= b, axis=1).sum())
    return inside / samples * float(np.prod(hi - lo))


def test_09_property_suites():
    rng = np.random.default_rng(2024)
    with criterion(9, "property suites", 120.0) as info:
        outputs = [catalog_polytope(n) for n in ("cube", "cross_polytope", "dodecahedron", "icosahedron",
                                                 "rhombic_dodecahedron", "rhombic_triacontahedron", "prism_3")]
        for spec in ("hypercube:3", "cycle:5", "cocktail_party:3", "icosahedron", "prism:3"):
            s = spectrum(parse_generator_spec(spec))
            for k in range(1, len(s.groups) + 1):
                P = convex_hull(eigenmatrix(s, k).entries)
                if P.dim == 3 and not P.degenerate:
                    outputs.append(P)
        outputs += [convex_hull(rng.normal(size=(15, 3))) for _ in range(20)]
        for P in outputs:
            v, e, f = P.f_vector_partial()
            assert v - e + f == 2
        worst = 0.0
        for d in (3, 3, 4, 4, 3):
            P = convex_hull(rng.normal(size=(12, d)))
            exact = volume(P)
            mc = _monte_carlo_volume(P, rng)
            worst = max(worst, abs(mc - exact) / exact)
        assert worst <= 5e-3
        cube = catalog_polytope("cube")
        G = skeleton_graph(cube)
        assert is_balanced(cube.coords, G).kind == "balanced"
        detected = 0
        for _ in range(10):
            Y = cube.coords.copy()
            Y[rng.integers(8)] += 1e-3 * rng.normal(size=3)
            detected += is_balanced(Y, G).kind != "balanced"
        assert detected == 10
        info.append(f"Euler on {len(outputs)} hulls, MC volume rel. error max {worst:.1e}, "
                    f"perturbations detected {detected}/10")
