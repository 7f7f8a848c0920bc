import itertools

import numpy as np
import pytest

from eigenpoly.catalog import catalog_polytope
from eigenpoly.certify import (
    argmax_route,
    is_balanced,
    is_spectral_graph,
    is_spectral_polytope,
    linear_transition,
    reconstruct_from_subspace,
)
from eigenpoly.geometry import convex_hull, skeleton_graph
from eigenpoly.graphs import Graph, generate, parse_generator_spec
from eigenpoly.spectra import eigenmatrix, spectrum


def test_cube_points_balanced(cube_points):
    c = is_balanced(cube_points, generate("hypercube", 3))
    assert c.kind == "balanced" and c.theta == pytest.approx(1.0, abs=1e-12)


def test_centered_simplex_balanced():
    S = np.vstack([np.eye(3), -np.ones(3)])
    S = S - S.mean(axis=0)
    c = is_balanced(S, generate("complete", 4))
    assert c.kind == "balanced" and c.theta == pytest.approx(-1.0, abs=1e-12)


def test_perturbed_cube_not_balanced(cube_points):
    X = cube_points.copy()
    X[0] += 0.1
    c = is_balanced(X, generate("hypercube", 3))
    assert c.kind == "not_spectral" and "not_balanced" in c.reasons
    assert c.residuals["balance_relative"] > c.residuals["balance_threshold"]


def test_is_balanced_row_mismatch(cube_points):
    with pytest.raises(ValueError):
        is_balanced(cube_points, generate("cycle", 5))


def test_cube_spectral_polytope(cube_points):
    c = is_spectral_polytope(convex_hull(cube_points))
    assert c.kind == "spectral_polytope" and c.k == 2
    assert c.theta == pytest.approx(1.0, abs=1e-12)
    assert c.threshold_violations() == []


def test_cyclic_polytope_balanced_not_spectral():
    p = catalog_polytope("cyclic_4_7")
    c = is_spectral_polytope(p)
    assert c.kind == "not_spectral"
    assert c.theta == pytest.approx(-1.0, abs=1e-9)
    assert c.residuals["balance_relative"] <= c.residuals["balance_threshold"]
    assert c.witness == {"multiplicity": 6, "dim": 4}


def test_rhombic_dodecahedron_spectral():
    c = is_spectral_polytope(catalog_polytope("rhombic_dodecahedron"))
    assert c.kind == "spectral_polytope" and c.k == 2 and c.theta == pytest.approx(2.0)


def test_degenerate_polytope():
    p = convex_hull(np.array([[0.0, 0, 0], [1, 0, 0], [0, 1, 0]]))
    assert is_spectral_polytope(p).kind == "degenerate"


def test_cube_spectral_graph():
    c = is_spectral_graph(generate("hypercube", 3), 2)
    assert c.kind == "spectral_graph" and c.residuals["routes_agree"]
    assert c.threshold_violations() == []


def test_pentagon_and_pentagram():
    g = generate("cycle", 5)
    assert is_spectral_graph(g, 2).kind == "spectral_graph"
    c = is_spectral_graph(g, 3)
    assert c.kind == "not_spectral"
    assert [1, 2] in c.witness["edge_not_realized"]
    assert c.residuals["routes_agree"]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_prism_never_spectral(k):
    c = is_spectral_graph(generate("prism", 3), k)
    assert c.kind == "not_spectral" and c.reasons
    assert c.witness


@pytest.mark.parametrize("name,reason", [("petersen", "degree_obstruction"), ("holt", "degree_obstruction")])
def test_negative_controls(name, reason):
    c = is_spectral_graph(generate(name), 2)
    assert c.kind == "not_spectral" and reason in c.reasons
    assert c.residuals["routes_agree"]


def test_index_out_of_range_and_disconnected():
    with pytest.raises(ValueError):
        is_spectral_graph(generate("hypercube", 3), 9)
    with pytest.raises(ValueError):
        is_spectral_graph(Graph.from_edges(4, [(0, 1), (2, 3)]), 2)


def test_certificate_json_schema():
    d = is_spectral_graph(generate("cycle", 5), 3).to_dict()
    assert set(d) == {"kind", "theta", "k", "residuals", "witness", "reasons"}


@pytest.mark.parametrize("spec", ["hypercube:3", "dodecahedron", "johnson:5,2", "cocktail_party:4", "cycle:7"])
def test_round_trip_spectral_graph_to_polytope(spec):
    g = parse_generator_spec(spec)
    c = is_spectral_graph(g, 2)
    assert c.kind == "spectral_graph"
    P = convex_hull(eigenmatrix(spectrum(g), 2).entries)
    back = is_spectral_polytope(P)
    assert back.kind == "spectral_polytope" and back.theta == pytest.approx(c.theta, abs=1e-9)


@pytest.mark.parametrize("spec,k", [("hypercube:3", 2), ("cycle:6", 3), ("petersen", 2), ("prism:3", 4),
                                    ("icosahedron", 2), ("icosahedron", 3)])
def test_argmax_route_agrees_with_hull(spec, k):
    g = parse_generator_spec(spec)
    Phi = eigenmatrix(spectrum(g), k).entries
    P = convex_hull(Phi)
    hull_ok = len(P.vertices) == g.n and P.edges == g.edges
    assert argmax_route(Phi, g)["spectral"] == hull_ok


def test_linear_transition_examples(rng):
    Phi = eigenmatrix(spectrum(generate("hypercube", 3)), 2).entries
    t = linear_transition(Phi, Phi)
    assert np.allclose(t.T, np.eye(3), atol=1e-10)
    D = np.diag([1.0, 2.0, 3.0])
    assert np.allclose(linear_transition(Phi, Phi @ D).T, D, atol=1e-10)
    pent = eigenmatrix(spectrum(generate("cycle", 5)), 2).entries
    padded = np.zeros((8, 3))
    padded[:5, :2] = pent
    padded[5:, 2] = 1.0
    assert linear_transition(Phi, padded) is None


def test_linear_transition_inverse_composition(rng):
    A = rng.normal(size=(10, 4))
    B = A @ rng.normal(size=(4, 4))
    T1 = linear_transition(A, B).T
    T2 = linear_transition(B, A).T
    assert np.allclose(T1 @ T2, np.eye(4), atol=1e-8)


def test_linear_transition_rank_deficient():
    A = np.ones((5, 2))
    with pytest.raises(ValueError):
        linear_transition(A, A)


def test_reconstruct_cube():
    U = eigenmatrix(spectrum(generate("hypercube", 3)), 2).entries
    rec = reconstruct_from_subspace(U)
    assert rec.graph == generate("hypercube", 3)


def test_reconstruct_dodecahedron():
    U = eigenmatrix(spectrum(generate("dodecahedron")), 2).entries
    rec = reconstruct_from_subspace(U)
    assert rec.polytope.f_vector_partial() == (20, 30, 12)
    assert rec.graph == generate("dodecahedron")


def test_reconstruct_perron_direction_degenerate():
    U = eigenmatrix(spectrum(generate("petersen")), 1).entries
    rec = reconstruct_from_subspace(U)
    assert rec.graph is None and rec.certificate.kind == "degenerate"


def test_reconstruct_requires_orthonormal():
    with pytest.raises(ValueError):
        reconstruct_from_subspace(np.ones((4, 2)))


def test_distance_regular_edges_survive_as_hull_edges():
    # measured fact: every graph edge is a hull edge of the theta_2 eigenpolytope here
    for spec in ("petersen", "johnson:5,2", "hamming:2,3", "halved_cube:5"):
        g = parse_generator_spec(spec)
        P = convex_hull(eigenmatrix(spectrum(g), 2).entries)
        assert g.edges <= P.edges, spec
