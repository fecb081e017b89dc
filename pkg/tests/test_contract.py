import itertools
import random

import pytest
from hypothesis import given, settings

from collapse_lab.canon import canonical_form
from collapse_lab.contract import (
    FRAGMENT_NOTE,
    DeleteEdge,
    DeleteVertex,
    GlueEdge,
    GlueVertex,
    Memo,
    MoveScript,
    PreconditionError,
    ScriptError,
    bounded_i_search,
    check_axiom,
    classify,
    dismantlable0,
    factor_edge_move,
    k_dismantlable,
    min_dismantle_level,
    order_matters_construct,
    order_sensitivity,
    parse_move,
    sic_exact,
    sic_greedy,
    svic_exact,
    svic_greedy,
    verify_script,
)
from collapse_lab.enumeration import enumerate_connected
from collapse_lab.homology import is_trivial_homology
from collapse_lab.graph import Graph, common_neighborhood, cone_over, induced_subgraph, is_connected, parse_graph6

from test_graph import graphs

AXIOM_VIOLATORS_8 = ["GD^v^o", "GQ}rm["]


def connected_upto(n):
    for k in range(1, n + 1):
        yield from enumerate_connected(k)


def random_tree(rng, n):
    return Graph.from_edges(n, [(i, rng.randrange(i)) for i in range(1, n)])


# -- greedy and exact predicates ---------------------------------------------


def test_small_verdicts():
    assert svic_greedy(Graph(1))
    assert not svic_greedy(Graph(0))
    assert not svic_greedy(Graph.cycle(5))
    assert not sic_greedy(Graph.cycle(6))
    assert sic_exact(Graph(1))[0]
    assert not sic_exact(Graph.cycle(4))[0]
    assert not svic_exact(Graph.cycle(4))[0]
    assert not svic_exact(Graph(3))[0]  # disconnected


def test_p4_witness_deletes_leaves():
    ok, witness = svic_exact(Graph.path(4))
    assert ok
    moves = witness.moves
    assert len(moves) == 3 and all(isinstance(m, DeleteVertex) for m in moves)
    assert moves[0].v in (0, 3)
    assert verify_script(witness.script(Graph.path(4))).n == 1


def test_cones_are_strong_vertex_contractible():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 9)
        base = Graph.from_edges(n, [p for p in itertools.combinations(range(n), 2) if rng.random() < 0.4])
        assert svic_greedy(cone_over(base))


def test_chordal_graphs_up_to_eight():
    nx = pytest.importorskip("networkx")
    seen = 0
    for n in range(2, 9):
        for g in enumerate_connected(n):
            if nx.is_chordal(nx.Graph(g.edges())):
                seen += 1
                assert sic_greedy(g)
                assert dismantlable0(g)[0]
    assert seen > 1000


def test_exact_and_greedy_agree_up_to_seven():
    for g in connected_upto(7):
        assert sic_exact(g)[0] == sic_greedy(g)
        assert svic_exact(g)[0] == svic_greedy(g)


def test_canonical_memo_matches_labeled_memo():
    labeled = Memo(labeled=True)
    for g in connected_upto(7):
        assert svic_exact(g, labeled)[0] == svic_exact(g)[0]
        assert sic_exact(g, labeled)[0] == sic_exact(g)[0]
        assert k_dismantlable(g, 1, labeled) == k_dismantlable(g, 1)


def test_uncached_search_matches():
    # without any cache the negative searches are factorial, so stop at 5 vertices
    off = Memo(enabled=False)
    for g in connected_upto(5):
        assert svic_exact(g, off)[0] == svic_exact(g)[0]
        assert sic_exact(g, off)[0] == sic_exact(g)[0]
    for g in enumerate_connected(6):
        if is_trivial_homology(g):
            assert sic_exact(g, off)[0] and svic_exact(g, off)[0]


def test_trees_dismantle():
    rng = random.Random(5)
    for n in range(1, 12):
        t = random_tree(rng, n)
        ok, witness = dismantlable0(t)
        assert ok
        assert verify_script(witness.script(t)).n == 1
    assert not dismantlable0(Graph.cycle(5))[0]


# -- dismantlability levels ---------------------------------------------------


def test_levels():
    assert min_dismantle_level(Graph.path(5)) == 0
    assert min_dismantle_level(Graph.cycle(6)) is None
    for k in range(4):
        assert not k_dismantlable(Graph.cycle(4), k)
    with pytest.raises(ValueError):
        k_dismantlable(Graph.path(2), -1)


def test_level_monotonicity_up_to_seven():
    for g in connected_upto(6):
        levels = [k_dismantlable(g, k) for k in range(4)]
        assert levels == sorted(levels)
    for g in enumerate_connected(7):
        if dismantlable0(g)[0]:
            assert k_dismantlable(g, 1)


def test_chain_and_level_equivalence_at_eight():
    from collapse_lab.reproduce import cached_sweep

    for row in cached_sweep(8):
        assert not row.dismantlable0 or row.svic_exact
        assert not row.svic_exact or row.sic_exact
        assert not row.sic_exact or row.trivial_homology
        if not row.svic_exact:
            assert min_dismantle_level(parse_graph6(row.g6)) is None


@pytest.fixture(scope="module")
def eight_vertex_non_dismantlable():
    found = []
    for g in enumerate_connected(8):
        if g.m <= 19 and svic_exact(g)[0] and not dismantlable0(g)[0]:
            found.append(g)
    return found


def test_eight_vertex_level_one(eight_vertex_non_dismantlable):
    graphs8 = eight_vertex_non_dismantlable
    assert min(g.m for g in graphs8) == 17
    for g in graphs8:
        assert k_dismantlable(g, 1) and not k_dismantlable(g, 0)
    least = min(graphs8, key=lambda g: g.m)
    assert min_dismantle_level(least) == 1


# -- axiom ----------------------------------------------------------------------


def test_axiom_small():
    k4 = check_axiom(Graph.complete(4))
    assert k4.holds and k4.checked_pairs == 0
    p3 = check_axiom(Graph.path(3))
    assert p3.holds and p3.failing_vertex is None


def test_axiom_holds_on_trees_and_cones():
    rng = random.Random(2)
    for _ in range(30):
        n = rng.randint(2, 9)
        t = random_tree(rng, n)
        assert check_axiom(t).holds
        assert check_axiom(cone_over(t)).holds
    for n in range(1, 7):
        assert check_axiom(Graph.complete(n)).holds


@pytest.mark.parametrize("g6", AXIOM_VIOLATORS_8)
def test_axiom_violator_structure(g6):
    g = parse_graph6(g6)
    assert sic_exact(g)[0]
    report = check_axiom(g)
    assert not report.holds
    v = report.failing_vertex
    non_neighbors = [u for u in range(g.n) if u != v and not g.has_edge(u, v)]
    assert len(non_neighbors) == 2
    commons = [common_neighborhood(g, v, u) for u in non_neighbors]
    for c in commons:
        assert len(c) == 4
        assert not is_connected(induced_subgraph(g, c))
    assert commons[0] | commons[1] == {u for u in range(g.n) if g.has_edge(u, v)}
    assert len(commons[0] & commons[1]) == 3


def test_strict_pseudocode_mode_checks_fewer_pairs():
    for g in connected_upto(6):
        if sic_exact(g)[0]:
            faithful = check_axiom(g)
            strict = check_axiom(g, strict_pseudocode=True)
            assert faithful.holds or not strict.holds


# -- scripts ----------------------------------------------------------------------


def test_move_text_round_trip():
    for line in ["DV 3", "GV 0 2 5", "DE 1 2", "GE 0 4"]:
        assert str(parse_move(line)) == line
    with pytest.raises(ValueError):
        parse_move("GV")
    with pytest.raises(ValueError):
        parse_move("DE 1 1")
    with pytest.raises(ValueError):
        parse_move("XX 1")
    script = MoveScript(Graph.path(3), [DeleteVertex(0), DeleteVertex(2)])
    assert MoveScript.from_text(script.to_text()) == script


def test_verify_script_examples():
    assert verify_script(MoveScript(Graph.path(3), [DeleteVertex(0), DeleteVertex(2)])) == Graph(1)
    assert verify_script(MoveScript(Graph.cycle(5), [GlueEdge(0, 2)])).m == 6
    with pytest.raises(ScriptError) as exc:
        verify_script(MoveScript(Graph.cycle(4), [GlueEdge(0, 2)]))
    assert exc.value.index == 0
    assert "[1, 3]" in str(exc.value)
    assert FRAGMENT_NOTE in str(exc.value)


def test_verify_script_errors():
    with pytest.raises(ScriptError, match="dangling"):
        verify_script(MoveScript(Graph.path(3), [DeleteVertex(0), DeleteVertex(0)]))
    with pytest.raises(ScriptError, match="not present"):
        verify_script(MoveScript(Graph.path(3), [DeleteEdge(0, 2)]))
    with pytest.raises(ScriptError):
        verify_script(MoveScript(Graph.cycle(5), [GlueVertex((0, 2))]))
    big = Graph.complete(64)
    with pytest.raises(ScriptError, match="exceed"):
        verify_script(MoveScript(big, [GlueVertex((0,))]))


def test_glued_vertices_get_fresh_ids():
    script = MoveScript(Graph.path(2), [GlueVertex((0, 1)), DeleteVertex(0), DeleteVertex(2)])
    assert verify_script(script) == Graph(1)


@settings(max_examples=60, deadline=None)
@given(g=graphs(min_n=1, max_n=8))
def test_witnesses_replay_to_one_vertex(g):
    for fn in (svic_exact, sic_exact, dismantlable0):
        ok, witness = fn(g)
        if ok:
            assert verify_script(witness.script(g)).n == 1


# -- edge factorization and order sensitivity --------------------------------------


def test_factor_edge_move_examples():
    c5 = Graph.cycle(5)
    script = factor_edge_move(c5, 0, 2, delete=False)
    assert len(script.moves) == 2
    assert isinstance(script.moves[0], GlueVertex) and isinstance(script.moves[1], DeleteVertex)
    assert canonical_form(verify_script(script)) == canonical_form(c5.add_edge(0, 2))
    chord = Graph.cycle(4).add_edge(0, 2)
    # the chord's common neighborhood {1, 3} is two isolated vertices, so it cannot be removed
    with pytest.raises(PreconditionError):
        factor_edge_move(chord, 0, 2, delete=True)
    out = verify_script(factor_edge_move(chord, 0, 1, delete=True))
    assert canonical_form(out) == canonical_form(chord.remove_edge(0, 1))
    with pytest.raises(PreconditionError):
        factor_edge_move(Graph.cycle(4), 0, 2, delete=False)


def test_factorization_up_to_six():
    for g in connected_upto(6):
        for u, v in itertools.combinations(range(g.n), 2):
            common = common_neighborhood(g, u, v)
            if not common or not sic_exact(induced_subgraph(g, common))[0]:
                continue
            present = g.has_edge(u, v)
            direct = g.remove_edge(u, v) if present else g.add_edge(u, v)
            out = verify_script(factor_edge_move(g, u, v, delete=present))
            assert canonical_form(out) == canonical_form(direct)


def test_order_sensitivity_empty_below_twelve():
    assert order_sensitivity(Graph.complete(5)) == []
    for g in connected_upto(7):
        if svic_exact(g)[0]:
            assert order_sensitivity(g) == []
    with pytest.raises(PreconditionError):
        order_sensitivity(Graph.cycle(5))


def test_order_matters_construct_on_small_graph():
    c5 = Graph.cycle(5).add_edge(0, 2)
    outs = order_matters_construct(c5, 0, 1)
    assert [h.n for h in outs] == [6, 6]
    for h in outs:
        assert h.n - 1 in range(h.n)
    with pytest.raises(PreconditionError):
        order_matters_construct(Graph.cycle(5), 0, 1)  # empty common neighborhood


# -- bounded search ----------------------------------------------------------------


def test_bounded_search():
    rng = random.Random(9)
    t = random_tree(rng, 7)
    script = bounded_i_search(t)
    assert script is not None
    assert not any(isinstance(m, GlueEdge) for m in script.moves)
    assert verify_script(script).n == 1
    assert bounded_i_search(Graph.cycle(5), max_edge_glues=3) is None


# -- classification record -----------------------------------------------------------


def test_classify_record():
    rec = classify(Graph.path(4)).to_json()
    assert rec["canonical_g6"] == canonical_form(Graph.path(4)).decode()
    assert rec["svic_exact"] and rec["dismantlable0"] and rec["min_dismantle_level"] == 0
    assert rec["axiom_holds"] is True
    assert rec["order_sensitive_vertices"] == []
    c6 = classify(Graph.cycle(6)).to_json()
    assert c6["betti"] == [0, 1]
    assert c6["axiom_holds"] is None and c6["min_dismantle_level"] is None
    perm = [3, 1, 0, 2]
    assert classify(Graph.path(4).relabel(perm), canonical=True) == classify(Graph.path(4), canonical=True)


# -- the 30-edge acyclic graph outside the strong vertex class -----------------------


@pytest.fixture(scope="module")
def g30():
    from collapse_lab.reproduce import symmetric_hunt

    found = symmetric_hunt()
    assert len(found) == 1
    return found[0]


# roles of the edges {1,5}, {2,8}, {6,4}, {7,9} in the symmetric labeling (0-based, degree-6 end first)
G30_EDGE_ROLES = [(0, 4), (1, 7), (5, 3), (6, 8)]


def test_g30_membership(g30):
    from collapse_lab.canon import automorphism_count, automorphisms

    assert g30.n == 11 and g30.m == 30
    assert not svic_exact(g30)[0]
    assert sic_exact(g30)[0] and sic_greedy(g30)
    assert automorphism_count(g30) == 4
    for a in automorphisms(g30):
        assert [a[a[i]] for i in range(11)] == list(range(11))


def test_g30_extensions(g30):
    from collapse_lab.canon import canonical_key

    classes = set()
    for u, v in G30_EDGE_ROLES:
        assert len(common_neighborhood(g30, u, v)) == 1
        assert g30.degree(u) == 6 and g30.degree(v) == 5
        first, second = order_matters_construct(g30, u, v)
        for h in (first, second):
            assert (h.n, h.m) == (12, 35)
            assert svic_exact(h)[0]
            assert 11 in order_sensitivity(h)
            assert not svic_exact(induced_subgraph(h, range(11)))[0]
        assert canonical_key(first.rows) != canonical_key(second.rows)
        classes |= {canonical_key(first.rows), canonical_key(second.rows)}
    assert len(classes) == 2
