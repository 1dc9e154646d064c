import numpy as np
import pytest
from hypothesis import given, settings

from tcascade import (
    Hypergraph,
    SolutionSet,
    binary_success_rate,
    build_hypergraph,
    build_network,
    evaluate_solutions,
    expected_spread,
    normalize,
    reverse_spread,
    simulate,
)
from tcascade.evaluation import metric_table, success_indicators, table_to_csv, table_to_json

from conftest import binom_3sigma, tiny_networks


def test_reverse_spread_formula():
    nets = [[0]] * 5 + [[1]] * 95
    h = Hypergraph.from_sets(10, nets)
    assert reverse_spread(h, [0]) == pytest.approx(0.5)
    assert reverse_spread(Hypergraph.from_sets(3, [[0], [1, 2], [2]]), range(3)) == 3.0
    with pytest.raises(ValueError):
        reverse_spread(Hypergraph.from_sets(3, []), [0])


def test_reverse_spread_without_edges_is_about_one():
    net = build_network(20, [], 1)
    n_nets = 20000
    h = build_hypergraph(net, n_nets=n_nets, seed=1)
    est = reverse_spread(h, [7])
    # covered nets ~ Binomial(n_nets, 1/20); reverse spread = 20 * covered / n_nets
    sigma = 20 * np.sqrt(n_nets * (1 / 20) * (19 / 20)) / n_nets
    assert abs(est - 1.0) < 3 * sigma


def test_success_rate_cases():
    net = build_network(8, [], 1)
    assert binary_success_rate(net, range(8), n_sims=200, seed=0) == 1.0
    rate = binary_success_rate(net, [3], n_sims=20000, seed=0)
    assert abs(rate - 1 / 8) < binom_3sigma(1 / 8, 20000)
    assert binary_success_rate(net, [3], n_sims=2000, seed=0, count_seed=False) == 0.0
    ring = build_network(5, [(u, (u + 1) % 5, 1, 1.0) for u in range(5)], 1)
    assert binary_success_rate(ring, [0], n_sims=300, seed=2) == 1.0


def test_expected_spread_cases():
    empty = build_network(6, [], 1)
    assert expected_spread(empty, [], n_sims=10, seed=0) == 0.0
    assert expected_spread(empty, range(6), n_sims=500, seed=0) == 1.0
    edge = build_network(2, [(0, 1, 1, 0.3)], 1)
    est = expected_spread(edge, [1], n_sims=40000, seed=6)
    assert abs(est - 0.65) < binom_3sigma(0.65, 40000)


def test_normalize():
    assert normalize([2, 4, 6]) == [0.0, 5.0, 10.0]
    assert normalize([7]) == [0.0]
    assert normalize([0, 10]) == [0.0, 10.0]
    assert normalize([3, 3, 3]) == [0.0, 0.0, 0.0]
    with pytest.raises(ValueError):
        normalize([])


def test_evaluate_shared_simulations(fixture6):
    h = build_hypergraph(fixture6, n_nets=5000, seed=0)
    sols = [SolutionSet("a", 1, (5,)), SolutionSet("b", 2, (5, 2)), SolutionSet("c", 1, (1,))]
    reports = evaluate_solutions(fixture6, h, sols, n_sims=3000, seed=4)
    assert reports[1].binary_success_rate >= reports[0].binary_success_rate
    assert reports[1].expected_spread >= reports[0].expected_spread
    # the same sets scored individually with the same seed agree exactly
    assert reports[0].binary_success_rate == binary_success_rate(fixture6, [5], n_sims=3000, seed=4)
    assert reports[2].expected_spread == expected_spread(fixture6, [1], n_sims=3000, seed=4)
    for r in reports:
        assert 0 <= r.binary_success_rate <= 1
        assert 0 <= r.expected_spread <= r.k
        assert 0 <= r.reverse_spread <= 6
    rows = metric_table(reports)
    for m in ("reverse_spread", "binary_success_rate", "expected_spread"):
        vals = [row[m + "_norm"] for row in rows]
        assert min(vals) == 0.0 and max(vals) == 10.0
    csv_text = table_to_csv(rows)
    assert csv_text.splitlines()[0].startswith("method,k,window,reverse_spread")
    assert len(csv_text.splitlines()) == 4
    assert table_to_json(rows) == table_to_json(metric_table(reports))


@settings(max_examples=30, deadline=None)
@given(tiny_networks())
def test_success_and_spread_monotone_samplewise(net):
    s = simulate(net, None, 300, seed=3)
    n = net.node_count
    small = [0]
    big = list(range(min(n, 2)))
    assert np.all(success_indicators(s, big) >= success_indicators(s, small))
    assert np.all(s.hit_counts(big) >= s.hit_counts(small))


@settings(max_examples=30, deadline=None)
@given(tiny_networks())
def test_spread_additivity(net):
    s = simulate(net, None, 300, seed=12)
    n = net.node_count
    s1, s2 = [0], list(range(1, n))
    assert np.array_equal(s.hit_counts(s1) + s.hit_counts(s2), s.hit_counts(range(n)))
    over = [0, 1]
    assert np.all(s.hit_counts(set(s1) | set(over)) <= s.hit_counts(s1) + s.hit_counts(over))


@settings(max_examples=20, deadline=None)
@given(tiny_networks())
def test_reverse_spread_monotone(net):
    h = build_hypergraph(net, n_nets=500, seed=2)
    prev = 0.0
    for k in range(1, net.node_count + 1):
        cur = reverse_spread(h, range(k))
        assert cur >= prev
        prev = cur
    assert prev == net.node_count
