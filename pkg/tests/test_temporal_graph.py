import numpy as np
import pytest
from hypothesis import given, settings

from tcascade import DataError, TemporalNetwork, Window, build_network, read_network_csv, write_network_csv
from tcascade.temporal_graph import from_arrays

from conftest import tiny_networks


def test_window_validation_and_length():
    assert len(Window(2, 4)) == 3
    with pytest.raises(ValueError):
        Window(0, 2)
    with pytest.raises(ValueError):
        Window(3, 2)
    net = build_network(2, [(0, 1, 1, 0.5)], 3)
    assert net.window(None) == Window(1, 3)
    assert net.window((2, 3)) == Window(2, 3)
    with pytest.raises(ValueError):
        net.window((1, 4))


def test_probability_lookup_and_neighbors():
    net = build_network(3, [(0, 1, 1, 0.5), (0, 2, 1, 0.25), (1, 2, 2, 1.0)], 2)
    assert net.probability_at(0, 1, 1) == 0.5
    assert net.probability_at(0, 1, 2) == 0.0
    assert net.probability_at(1, 0, 1) == 0.0
    assert net.neighbors_at(0, 1) == [(1, 0.5), (2, 0.25)]
    assert net.neighbors_at(2, 2) == []
    with pytest.raises(IndexError):
        net.probability_at(3, 0, 1)
    with pytest.raises(IndexError):
        net.neighbors_at(0, 3)


def test_last_duplicate_wins_and_zero_dropped():
    net = build_network(2, [(0, 1, 1, 0.2), (0, 1, 1, 0.7), (1, 0, 1, 0.0)], 1)
    assert net.record_count == 1
    assert net.probability_at(0, 1, 1) == 0.7
    assert net.probability_at(1, 0, 1) == 0.0


@pytest.mark.parametrize("rec, msg", [
    ((0, 0, 1, 0.5), "self-loop"),
    ((0, 5, 1, 0.5), "out of range"),
    ((0, 1, 4, 0.5), "interval"),
    ((0, 1, 1, 1.5), "probability"),
    ((0, 1, 1, -0.1), "probability"),
])
def test_invalid_records_rejected(rec, msg):
    with pytest.raises(ValueError, match=msg):
        build_network(3, [rec], 3)


def test_arrays_are_read_only():
    net = build_network(2, [(0, 1, 1, 0.5)], 1)
    with pytest.raises(ValueError):
        net.probs[0] = 0.9


def test_empty_network():
    net = build_network(4, [], 2)
    assert net.record_count == 0
    assert list(net.records()) == []
    assert net.window() == Window(1, 2)


@settings(max_examples=60, deadline=None)
@given(tiny_networks())
def test_csv_round_trip(tmp_path_factory, net):
    path = tmp_path_factory.mktemp("rt") / "net.csv"
    write_network_csv(net, path)
    back = read_network_csv(path)
    assert back == net
    assert back.node_count == net.node_count and back.interval_count == net.interval_count


@settings(max_examples=60, deadline=None)
@given(tiny_networks())
def test_transpose_involution(net):
    tr = net.transpose()
    assert tr.transpose() == net
    for u, v, t, p in net.records():
        assert tr.probability_at(v, u, t) == p


@settings(max_examples=40, deadline=None)
@given(tiny_networks())
def test_records_sorted_and_consistent(net):
    recs = list(net.records())
    assert recs == sorted(recs, key=lambda r: (r[2], r[0], r[1]))
    for u, v, t, p in recs:
        assert net.probability_at(u, v, t) == p
        assert 0 < p <= 1


def test_without_records_keeps_unmasked():
    net = build_network(3, [(0, 1, 1, 0.5), (1, 2, 1, 0.5), (2, 0, 2, 0.5)], 2)
    mask = np.array([False, True, False])
    out = net.without_records(mask)
    assert out.record_count == 2
    assert out.probability_at(1, 2, 1) == 0.0
    assert out.probability_at(2, 0, 2) == 0.5


def test_read_errors_report_line_numbers(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("u,v,t,p\n0,1,1,0.5\n1,1,1,0.5\n")
    with pytest.raises(DataError, match=r"bad.csv:3: self-loop"):
        read_network_csv(path)
    path.write_text("u,v,t,p\n0,1,1,0.5\n0,x,1,0.5\n")
    with pytest.raises(DataError, match=r":3: malformed"):
        read_network_csv(path)
    path.write_text("u,v,t,p\n0,1,1,1.5\n")
    with pytest.raises(DataError, match=r":2: probability"):
        read_network_csv(path)
    path.write_text("# tcascade nodes=2 intervals=1\nu,v,t,p\n0,2,1,0.5\n")
    with pytest.raises(DataError, match=r":3: node id out of range"):
        read_network_csv(path)
    path.write_text("a,b\n")
    with pytest.raises(DataError, match="header lacks"):
        read_network_csv(path)


def test_metadata_preserves_isolated_nodes(tmp_path):
    net = build_network(10, [(0, 1, 2, 0.5)], 5)
    write_network_csv(net, tmp_path / "n.csv")
    back = read_network_csv(tmp_path / "n.csv")
    assert (back.node_count, back.interval_count) == (10, 5)
    assert isinstance(back, TemporalNetwork)


def test_from_arrays_length_mismatch():
    with pytest.raises(ValueError, match="length"):
        from_arrays(2, 1, [0], [1, 0], [1], [0.5])
