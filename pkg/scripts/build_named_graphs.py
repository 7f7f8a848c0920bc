"""Regenerate the embedded named-graph edge lists under src/eigenpoly/data/graphs.

Each construction is a textbook one; the resulting files carry a construction
comment and are validated by tests/test_graphs.py (vertex count, regularity,
strongly-regular parameters, automorphism group order).
"""
from itertools import combinations
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "eigenpoly" / "data" / "graphs"
PHI = (1 + 5 ** 0.5) / 2


def min_distance_edges(points):
    points = np.asarray(points, dtype=float)
    D = np.linalg.norm(points[:, None] - points[None], axis=-1)
    dmin = D[D > 1e-9].min()
    iu, ju = np.nonzero(np.triu(np.abs(D - dmin) < 1e-6, 1))
    return len(points), list(zip(iu.tolist(), ju.tolist()))


def icosahedron_points():
    pts = []
    for a in (1, -1):
        for b in (PHI, -PHI):
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    return sorted(pts)


def dodecahedron_points():
    pts = [(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)]
    for a in (1 / PHI, -1 / PHI):
        for b in (PHI, -PHI):
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    return sorted(pts)


def petersen():
    verts = list(combinations(range(5), 2))
    edges = [(i, j) for i, j in combinations(range(10), 2) if not set(verts[i]) & set(verts[j])]
    return 10, edges


def schlafli():
    # complement of the intersection graph of the 27 lines on a cubic surface
    lines = [("a", i) for i in range(6)] + [("b", i) for i in range(6)]
    lines += [("c", p) for p in combinations(range(6), 2)]

    def meet(x, y):
        (tx, px), (ty, py) = x, y
        if tx == ty == "c":
            return not set(px) & set(py)
        if tx == ty:
            return False
        if "c" in (tx, ty):
            single, pair = (px, py) if tx != "c" else (py, px)
            return single in pair
        return px != py

    edges = [(i, j) for i, j in combinations(range(27), 2) if not meet(lines[i], lines[j])]
    return 27, edges


def gosset():
    # two copies of the 2-subsets of {1..8}; same copy adjacent when meeting
    # in one point, opposite copies adjacent when disjoint
    pairs = list(combinations(range(8), 2))
    verts = [(0, p) for p in pairs] + [(1, p) for p in pairs]
    edges = []
    for i, j in combinations(range(56), 2):
        (ci, pi), (cj, pj) = verts[i], verts[j]
        common = len(set(pi) & set(pj))
        if (ci == cj and common == 1) or (ci != cj and common == 0):
            edges.append((i, j))
    return 56, edges


def holt():
    # Z_9 x Z_3 with (x, y) ~ (4x +- 1, y + 1)
    idx = {(x, y): 3 * x + y for x in range(9) for y in range(3)}
    edges = set()
    for x in range(9):
        for y in range(3):
            for s in (1, -1):
                u, v = idx[(x, y)], idx[((4 * x + s) % 9, (y + 1) % 3)]
                edges.add((min(u, v), max(u, v)))
    return 27, sorted(edges)


def rhombic_dodecahedron():
    # cube vertices 0..7, then +-2 e_k; cube vertex joins the three axis
    # vertices sharing its signs
    cube = [(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)]
    axis = [(k, s) for k in range(3) for s in (1, -1)]
    edges = []
    for i, v in enumerate(cube):
        for j, (k, s) in enumerate(axis):
            if v[k] == s:
                edges.append((i, 8 + j))
    return 14, edges


def rhombic_triacontahedron():
    # icosahedron vertices 0..11, then one vertex per icosahedral face
    ico_n, ico_edges = min_distance_edges(icosahedron_points())
    adj = {e for e in ico_edges}
    faces = [t for t in combinations(range(12), 3)
             if all((min(a, b), max(a, b)) in adj for a, b in combinations(t, 2))]
    assert len(faces) == 20
    edges = [(v, 12 + f) for f, tri in enumerate(faces) for v in tri]
    return 32, edges


BUILDERS = {
    "petersen": (petersen, "Kneser graph K(5,2): 2-subsets of {1..5}, adjacent when disjoint"),
    "dodecahedron": (lambda: min_distance_edges(dodecahedron_points()),
                     "regular dodecahedron coordinates (+-1,+-1,+-1), cyclic (0,+-1/phi,+-phi); shortest distances"),
    "icosahedron": (lambda: min_distance_edges(icosahedron_points()),
                    "regular icosahedron coordinates cyclic (0,+-1,+-phi); shortest distances"),
    "schlafli": (schlafli, "complement of the intersection graph of the 27 lines on a cubic surface (a_i, b_i, c_ij)"),
    "gosset": (gosset, "two copies of 2-subsets of {1..8}; same copy: share one point, opposite copies: disjoint"),
    "holt": (holt, "Z_9 x Z_3, (x,y) ~ (4x+1,y+1), (4x-1,y+1); vertex (x,y) has index 3x+y+1"),
    "rhombic_dodecahedron_skeleton": (rhombic_dodecahedron,
                                      "vertices 1-8 cube (+-1)^3 in sign order, 9-14 = +-2e_1, +-2e_2, +-2e_3"),
    "rhombic_triacontahedron_skeleton": (rhombic_triacontahedron,
                                         "vertices 1-12 icosahedron (sorted cyclic (0,+-1,+-phi)), 13-32 its faces"),
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (build, note) in BUILDERS.items():
        n, edges = build()
        lines = [f"# {name}", f"# construction: {note}", "# generated by scripts/build_named_graphs.py", str(n)]
        lines += [f"{i + 1} {j + 1}" for i, j in sorted(edges)]
        (OUT / f"{name}.edges").write_text("\n".join(lines) + "\n")
        print(f"{name}: n={n} m={len(edges)}")


if __name__ == "__main__":
    main()
