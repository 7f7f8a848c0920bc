import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigenpoly.graphs import (
    AutomorphismError,
    Graph,
    GraphError,
    automorphisms,
    distances,
    from_json,
    generate,
    is_automorphism,
    parse_generator_spec,
    parse_graph,
    to_edge_list,
    to_graph6,
    to_json,
    transitivity,
)


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def brute_force_automorphisms(g):
    return [p for p in itertools.permutations(range(g.n)) if is_automorphism(g, p)]


# parsing and serialization

def test_edge_list_single_vertex():
    g = parse_graph("1\n")
    assert g.n == 1 and g.m == 0


def test_edge_list_cube_binary_labels():
    lines = ["8"]
    for i, j in itertools.combinations(range(8), 2):
        if bin(i ^ j).count("1") == 1:
            lines.append(f"{i + 1} {j + 1}")
    g = parse_graph("\n".join(lines))
    assert g.n == 8 and g.m == 12 and g.regular_degree() == 3
    assert g == generate("hypercube", 3)


def test_edge_list_comments_and_duplicates():
    g = parse_graph("# triangle\n3\n1 2\n2 3\n3 1\n2 1  # again\n")
    assert g.m == 3


@pytest.mark.parametrize("text", ["x\n1 2", "3\n1 4", "3\n2 2", "3\n1"])
def test_edge_list_errors(text):
    with pytest.raises(GraphError):
        parse_graph(text)


def test_graph6_against_networkx_encoder():
    data = nx.to_graph6_bytes(nx.cycle_graph(5), header=False).decode().strip()
    g = parse_graph(data, format="graph6")
    assert nx.is_isomorphic(to_nx(g), nx.cycle_graph(5))
    assert g == generate("cycle", 5)


@pytest.mark.parametrize("spec", ["petersen", "hypercube:4", "johnson:6,2", "gosset"])
def test_graph6_writer_decoded_by_networkx(spec):
    g = parse_generator_spec(spec)
    H = nx.from_graph6_bytes(to_graph6(g).encode())
    assert sorted(tuple(sorted(e)) for e in H.edges()) == sorted(g.edges)


def test_graph6_header_prefix():
    data = ">>graph6<<" + to_graph6(generate("complete", 4))
    assert parse_graph(data, format="graph6") == generate("complete", 4)


def test_json_and_edge_list_round_trip():
    g = generate("prism", 4)
    assert from_json(to_json(g)) == g
    assert parse_graph(to_edge_list(g)) == g
    assert to_json(g) == to_json(generate("prism", 4))


def test_graph_rejects_loops():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])


# generators

def test_generator_counts():
    c = generate("cycle", 5)
    assert (c.n, c.m, c.regular_degree()) == (5, 5, 2)
    q = generate("hypercube", 3)
    assert (q.n, q.m) == (8, 12)


def test_johnson_5_2_brute_force():
    pairs = list(itertools.combinations(range(5), 2))
    edges = {(a, b) for a, b in itertools.combinations(range(10), 2) if len(set(pairs[a]) & set(pairs[b])) == 1}
    g = generate("johnson", 5, 2)
    assert (g.n, g.m, g.regular_degree()) == (10, 30, 6)
    assert nx.is_isomorphic(to_nx(g), nx.Graph(list(edges)))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_johnson_n_1_and_hamming_1_q_are_complete(n):
    Kn = to_nx(generate("complete", n))
    assert nx.is_isomorphic(to_nx(generate("johnson", n, 1)), Kn)
    assert nx.is_isomorphic(to_nx(generate("hamming", 1, n)), Kn)


@pytest.mark.parametrize("name,ref", [
    ("petersen", nx.petersen_graph),
    ("dodecahedron", nx.dodecahedral_graph),
    ("icosahedron", nx.icosahedral_graph),
])
def test_named_graphs_match_networkx(name, ref):
    assert nx.is_isomorphic(to_nx(generate(name)), ref())


def test_halved_cube_and_cocktail_party_against_networkx():
    H = nx.power(nx.hypercube_graph(4), 2)
    even = [v for v in H if sum(v) % 2 == 0]
    assert nx.is_isomorphic(to_nx(generate("halved_cube", 4)), H.subgraph(even))
    assert nx.is_isomorphic(to_nx(generate("cocktail_party", 3)), nx.complete_multipartite_graph(2, 2, 2))
    assert nx.is_isomorphic(to_nx(generate("hamming", 2, 3)),
                            nx.cartesian_product(nx.complete_graph(3), nx.complete_graph(3)))


@pytest.mark.parametrize("name,n,k,spec", [
    ("schlafli", 27, 16, {16: 1, 4: 6, -2: 20}),
    ("gosset", 56, 27, {27: 1, 9: 7, -1: 27, -3: 21}),
    ("holt", 27, 4, None),
])
def test_resource_graph_invariants(name, n, k, spec):
    g = generate(name)
    assert g.n == n and g.regular_degree() == k
    if spec:
        w = np.round(np.linalg.eigvalsh(g.adjacency)).astype(int)
        assert dict(zip(*np.unique(w, return_counts=True))) == spec


def test_generator_errors():
    with pytest.raises((GraphError, KeyError, ValueError)):
        generate("nonexistent", 3)
    with pytest.raises((GraphError, ValueError)):
        generate("johnson", 3, 5)
    with pytest.raises((GraphError, ValueError)):
        parse_generator_spec("cycle:x")


# distances

@pytest.mark.parametrize("spec,diam", [("complete:4", 1), ("hypercube:3", 3), ("cycle:5", 2), ("petersen", 2)])
def test_distances_against_networkx(spec, diam):
    g = parse_generator_spec(spec)
    res = distances(g)
    assert res.connected and res.diameter == diam
    ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    for i in range(g.n):
        for j in range(g.n):
            assert res.matrix[i, j] == ref[i][j]


def test_distances_disconnected_flag():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    res = distances(g)
    assert not res.connected
    assert res.matrix[0, 2] == -1


# automorphisms

@pytest.mark.parametrize("spec", ["complete:4", "cycle:5", "prism:3", "cycle:6", "complete_multipartite:2,3"])
def test_automorphism_order_matches_brute_force(spec):
    g = parse_generator_spec(spec)
    aut = automorphisms(g)
    assert aut.order == len(brute_force_automorphisms(g))
    assert all(is_automorphism(g, p) for p in aut.generators)


@pytest.mark.parametrize("spec,order", [
    ("complete:4", 24), ("cycle:5", 10), ("hypercube:3", 48), ("petersen", 120),
    ("dodecahedron", 120), ("holt", 54), ("schlafli", 51840), ("hypercube:4", 384),
])
def test_automorphism_orders(spec, order):
    g = parse_generator_spec(spec)
    aut = automorphisms(g)
    assert aut.order == order
    if order <= 1000:
        assert len(aut.elements()) == order


def test_automorphism_enumeration_cap():
    aut = automorphisms(generate("schlafli"))
    with pytest.raises(AutomorphismError):
        aut.elements(cap=1000)


def test_automorphism_search_bound():
    with pytest.raises(AutomorphismError):
        automorphisms(generate("cycle", 10), bound=5)


# transitivity

def test_petersen_distance_transitive():
    assert transitivity(generate("petersen")).distance_transitive


def test_holt_half_transitive():
    t = transitivity(generate("holt"))
    assert t.vertex_transitive and t.edge_transitive and not t.arc_transitive
    assert t.half_transitive and not t.distance_transitive


def test_star_edge_but_not_vertex_transitive():
    t = transitivity(parse_graph("4\n1 2\n1 3\n1 4\n"))
    assert t.edge_transitive and not t.vertex_transitive and not t.half_transitive


def test_disconnected_not_distance_transitive():
    t = transitivity(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert not t.distance_transitive and t.reason == "disconnected"


def test_rhombic_skeletons_edge_transitive_only():
    for name in ("rhombic_dodecahedron_skeleton", "rhombic_triacontahedron_skeleton"):
        t = transitivity(generate(name))
        assert t.edge_transitive and not t.vertex_transitive


@st.composite
def small_graphs(draw):
    n = draw(st.integers(2, 6))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_random_graphs_automorphisms_and_profile(g):
    brute = brute_force_automorphisms(g)
    aut = automorphisms(g)
    assert aut.order == len(brute)
    assert sorted(aut.elements()) == sorted(brute)
    t = transitivity(g, aut)
    if t.arc_transitive:
        assert t.vertex_transitive and t.edge_transitive
    if t.distance_transitive and g.m:
        assert t.arc_transitive
    assert t.half_transitive == (t.vertex_transitive and t.edge_transitive and not t.arc_transitive)
    # vertex orbits from brute force
    orbits = {frozenset(p[v] for p in brute) for v in range(g.n)}
    assert t.vertex_orbits == len(orbits)


@settings(max_examples=40, deadline=None)
@given(small_graphs())
def test_random_graphs_distance_properties(g):
    res = distances(g)
    D = res.matrix
    assert np.array_equal(D, D.T) and np.all(np.diag(D) == 0)
    if res.connected:
        for i, j, k in itertools.product(range(g.n), repeat=3):
            assert D[i, k] <= D[i, j] + D[j, k]
