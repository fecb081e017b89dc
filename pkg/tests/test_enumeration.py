import io
import json

import pytest

from collapse_lab.canon import canonical_key
from collapse_lab.contract import classify
from collapse_lab.enumeration import (
    CensusSpec,
    connected_keys,
    enumerate_connected,
    filter_name,
    ingest_graph6_stream,
    labeled_connected_count,
    run_census,
)
from collapse_lab.graph import CapacityError, Graph, Graph6Error, emit_graph6, is_connected, parse_graph6
from collapse_lab.homology import is_trivial_homology
from collapse_lab.reproduce import brute_force_classes


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112)])
def test_counts_match_brute_force(n, count):
    keys = connected_keys(n)
    assert len(keys) == count
    assert len(set(keys)) == count
    oracle = brute_force_classes(n)
    assert len(oracle) == count
    assert sorted(canonical_key(r) for r in oracle) == list(keys)


def test_generated_graphs_are_connected_and_sorted():
    for n in range(1, 8):
        graphs = list(enumerate_connected(n))
        assert all(g.n == n and is_connected(g) for g in graphs)
        keys = [emit_graph6(g) for g in graphs]
        assert keys == sorted(keys)
        assert all(canonical_key(g.rows) == emit_graph6(g) for g in graphs)


def test_generator_range():
    with pytest.raises(ValueError):
        list(enumerate_connected(0))
    with pytest.raises(ValueError):
        list(enumerate_connected(11))


def test_disk_cache_round_trip(tmp_path):
    first = connected_keys(6, cache_dir=tmp_path)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert connected_keys(6, cache_dir=tmp_path) == first


def test_labeled_counts():
    assert [labeled_connected_count(n) for n in range(1, 9)] == [1, 1, 4, 38, 728, 26704, 1866256, 251548592]


def test_ingest_stream():
    records = [b"@", b"Bw", b"D?{"]
    assert [g.n for g in ingest_graph6_stream(records)] == [1, 3, 5]
    assert list(ingest_graph6_stream([])) == []
    with pytest.raises(Graph6Error, match="line 1"):
        list(ingest_graph6_stream([b"\x7fabc"]))
    with pytest.raises(Graph6Error, match="line 2"):
        list(ingest_graph6_stream(io.BytesIO(b"@\nD?\n")))


def test_filter_names():
    assert filter_name("sic_exact") == "sic"
    with pytest.raises(ValueError):
        filter_name("bogus")


def test_census_spec_validation():
    with pytest.raises(ValueError):
        CensusSpec(n=11)
    with pytest.raises(CapacityError):
        CensusSpec(n=65, source="x.g6")
    with pytest.raises(ValueError):
        CensusSpec(n=5, workers=0)


def test_trivial_homology_census_at_five():
    res = run_census(CensusSpec(n=5, filters=["trivial-homology"]))
    expected = sum(is_trivial_homology(g) for g in enumerate_connected(5))
    assert res.total_scanned == 21
    assert res.pass_counts == {"trivial-homology": expected}
    assert len(res.matched) == expected == 16


def test_axiom_census_at_eight():
    res = run_census(CensusSpec(n=8, filters=["sic_exact", "axiom-fails"]))
    assert len(res.matched) == 2
    for key, rec in res.matched:
        assert rec == classify(parse_graph6(key), canonical=True)
        assert rec.axiom_holds is False


def test_filter_order_does_not_change_membership():
    a = run_census(CensusSpec(n=7, filters=["trivial-homology", "not-dismantlable0"], classify_matches=False))
    b = run_census(CensusSpec(n=7, filters=["not-dismantlable0", "trivial-homology"], classify_matches=False))
    assert [k for k, _ in a.matched] == [k for k, _ in b.matched]


def test_worker_count_determinism():
    outs = {
        run_census(CensusSpec(n=7, filters=["trivial-homology"], workers=w, batch_size=50)).to_jsonl()
        for w in (1, 2, 4)
    }
    assert len(outs) == 1


def test_stream_source_and_input_order(tmp_path):
    keys = list(connected_keys(6))
    forward = tmp_path / "f.g6"
    backward = tmp_path / "b.g6"
    relabeled = [emit_graph6(parse_graph6(k).relabel(list(reversed(range(6))))) for k in keys]
    forward.write_bytes(b"\n".join(keys) + b"\n")
    backward.write_bytes(b"\n".join(reversed(relabeled)) + b"\n")
    a = run_census(CensusSpec(source=str(forward), filters=["not-svic"]))
    b = run_census(CensusSpec(source=str(backward), filters=["not-svic"]))
    assert a.to_jsonl() == b.to_jsonl()
    assert a.total_scanned == 112


def test_write_appends_jsonl_and_g6(tmp_path):
    res = run_census(CensusSpec(n=4, filters=["nontrivial-homology"]))
    prefix = tmp_path / "out"
    jsonl, g6 = res.write(prefix)
    res.write(prefix)
    lines = jsonl.read_text().splitlines()
    assert len(lines) == 2 * (len(res.matched) + 1)
    assert json.loads(lines[-1])["summary"]["total_scanned"] == 6
    assert g6.read_text().split() == [k for k, _ in res.matched] * 2
    only = parse_graph6(g6.read_text().split()[0])  # C4 is the one cyclic 4-vertex graph
    assert canonical_key(only.rows) == canonical_key(Graph.cycle(4).rows)
