import itertools

import pytest
from hypothesis import given, settings

from collapse_lab.enumeration import enumerate_connected
from collapse_lab.graph import Graph, component_masks, disjoint_union
from collapse_lab.homology import (
    boundary_matrix,
    clique_complex,
    homology,
    is_trivial_homology,
    rational_betti,
    rational_rank,
    smith_normal_form,
)

from test_graph import graphs

OCTAHEDRON = Graph.from_edges(6, [p for p in itertools.combinations(range(6), 2) if p not in {(0, 1), (2, 3), (4, 5)}])


def brute_cliques(g: Graph) -> list[int]:
    counts = []
    for size in range(1, g.n + 1):
        c = sum(all(g.has_edge(a, b) for a, b in itertools.combinations(s, 2)) for s in itertools.combinations(range(g.n), size))
        if not c:
            break
        counts.append(c)
    return counts


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def test_clique_complex_examples():
    assert clique_complex(Graph.cycle(4)).f_vector() == [4, 4]
    k3 = clique_complex(Graph.complete(3))
    assert list(k3.faces_by_dim[2]) == [(0, 1, 2)]
    assert k3.f_vector() == [3, 3, 1]
    assert clique_complex(OCTAHEDRON).f_vector() == [6, 12, 8]
    with pytest.raises(ValueError):
        clique_complex(Graph(0))


@settings(max_examples=60, deadline=None)
@given(g=graphs(min_n=1, max_n=8))
def test_clique_counts_match_brute_force(g):
    c = clique_complex(g)
    assert c.f_vector() == brute_cliques(g)
    for faces in c.faces_by_dim:
        assert list(faces) == sorted(set(faces))


def test_boundary_examples():
    d1 = boundary_matrix(clique_complex(Graph.complete(3)), 1)
    assert len(d1) == 3 and len(d1[0]) == 3
    assert rational_rank(d1) == 2
    assert rational_rank(boundary_matrix(clique_complex(Graph.cycle(4)), 1)) == 3
    with pytest.raises(ValueError):
        boundary_matrix(clique_complex(Graph.cycle(4)), 2)
    with pytest.raises(ValueError):
        boundary_matrix(clique_complex(Graph.cycle(4)), 0)


@settings(max_examples=40, deadline=None)
@given(g=graphs(min_n=3, max_n=8))
def test_boundary_squared_is_zero(g):
    c = clique_complex(g)
    for d in range(1, c.dim):
        prod = matmul(boundary_matrix(c, d), boundary_matrix(c, d + 1))
        assert all(x == 0 for row in prod for x in row)


def test_smith_normal_form_known_matrix():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert smith_normal_form([[6, 4], [4, 6]]) == [2, 10]


@pytest.mark.parametrize(
    "g, betti",
    [
        (Graph.cycle(6), (0, 1)),
        (Graph.complete(4), (0, 0, 0, 0)),
        (OCTAHEDRON, (0, 0, 1)),
        (disjoint_union(Graph.complete(2), Graph.cycle(4)), (1, 1)),
    ],
)
def test_homology_examples(g, betti):
    h = homology(g)
    assert h.betti == betti
    assert all(not t for t in h.torsion)


RP2_TRIANGLES = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
]


def barycentric_rp2() -> Graph:
    """Order complex of the face poset of the 6-vertex projective plane (flag by construction)."""
    faces = sorted({frozenset(s) for t in RP2_TRIANGLES for k in (1, 2, 3) for s in itertools.combinations(t, k)}, key=sorted)
    index = {f: i for i, f in enumerate(faces)}
    return Graph.from_edges(len(faces), [(index[a], index[b]) for a in faces for b in faces if a < b])


def test_projective_plane_torsion():
    g = barycentric_rp2()
    assert clique_complex(g).f_vector() == [31, 90, 60]
    h = homology(g)
    assert h.betti == (0, 0, 0)
    assert h.torsion == ((), (2,), ())
    assert rational_betti(g) == (0, 0, 0)


def test_trivial_homology_examples():
    assert is_trivial_homology(Graph.path(6))
    assert is_trivial_homology(Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]))
    assert not is_trivial_homology(Graph.cycle(5))
    assert not is_trivial_homology(Graph(2))


def test_chordal_graphs_are_acyclic():
    nx = pytest.importorskip("networkx")
    chordal = 0
    for n in range(1, 8):
        for g in enumerate_connected(n):
            if nx.is_chordal(nx.Graph(g.edges())) or g.n == 1:
                chordal += 1
                assert is_trivial_homology(g)
    assert chordal > 100


@settings(max_examples=100, deadline=None)
@given(g=graphs(min_n=1, max_n=8))
def test_profile_invariants(g):
    h = homology(g)
    c = clique_complex(g)
    assert all(b >= 0 for b in h.betti)
    assert all(t >= 2 for ts in h.torsion for t in ts)
    reduced_euler = sum((-1) ** d * f for d, f in enumerate(c.f_vector())) - 1
    assert reduced_euler == sum((-1) ** d * b for d, b in enumerate(h.betti))
    assert h.betti[0] == len(component_masks(g.rows)) - 1
    if all(not t for t in h.torsion):
        assert rational_betti(g) == h.betti
    perm = list(reversed(range(g.n)))
    assert homology(g.relabel(perm)) == h


def test_rational_agrees_with_snf_on_seven_vertices():
    for g in enumerate_connected(7):
        h = homology(g)
        if all(not t for t in h.torsion):
            assert rational_betti(g) == h.betti


def test_profile_json_shape():
    out = homology(Graph.cycle(6)).to_json()
    assert out == {"betti": [0, 1], "torsion": [[], []], "euler": 0}
