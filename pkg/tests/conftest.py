"""Shared tiny-instance generators."""

from __future__ import annotations

from importlib import resources

import numpy as np
import pytest
from hypothesis import strategies as st

from tcascade import build_network, read_network_csv

PROBS = (0.1, 0.25, 0.5, 0.75, 0.9, 1.0)


def random_tiny_network(rng, *, max_nodes=5, max_pairs=6, max_intervals=3, p_choices=None):
    """Random network with at most ``max_pairs`` distinct (edge, interval) records."""
    rng = np.random.default_rng(rng)
    n = int(rng.integers(2, max_nodes + 1))
    T = int(rng.integers(1, max_intervals + 1))
    cand = [(u, v, t) for t in range(1, T + 1) for u in range(n) for v in range(n) if u != v]
    m = int(rng.integers(1, min(max_pairs, len(cand)) + 1))
    pick = rng.choice(len(cand), size=m, replace=False)
    recs = []
    for k in sorted(pick.tolist()):
        u, v, t = cand[k]
        p = float(rng.choice(p_choices)) if p_choices else float(np.round(rng.uniform(0.05, 1.0), 3))
        recs.append((u, v, t, p))
    return build_network(n, recs, T)


@st.composite
def tiny_networks(draw, max_nodes=5, max_pairs=6, max_intervals=3):
    n = draw(st.integers(2, max_nodes))
    T = draw(st.integers(1, max_intervals))
    triples = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(1, T)).filter(
        lambda x: x[0] != x[1])
    keys = draw(st.lists(triples, max_size=max_pairs, unique=True))
    recs = [(u, v, t, draw(st.sampled_from(PROBS))) for u, v, t in keys]
    return build_network(n, recs, T)


@st.composite
def hypergraph_nets(draw, max_nodes=12, max_nets=20):
    n = draw(st.integers(1, max_nodes))
    nets = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True),
                         min_size=0, max_size=max_nets))
    return n, nets


@pytest.fixture
def chain():
    """p=1 chain 0 -> 1 -> 2 in a single interval."""
    return build_network(3, [(0, 1, 1, 1.0), (1, 2, 1, 1.0)], 1)


@pytest.fixture
def fixture6():
    return read_network_csv(resources.files("tcascade") / "data" / "fixture6.csv")


def binom_3sigma(p, n):
    return 3.0 * np.sqrt(max(p * (1 - p), 1e-12) / n)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} - {detail}")
