"""Synthetic temporal networks for tests and benchmarks."""

from __future__ import annotations

import numpy as np

from ..temporal_graph import TemporalNetwork, from_arrays

FAMILIES = ("er", "late_bloomer")
BENCHMARK_SEED = 0  # default seed of the planted benchmark


def erdos_renyi(n_nodes: int, n_intervals: int, rng, *, density: float = 0.05,
                p_range: tuple[float, float] = (0.0, 0.3)) -> TemporalNetwork:
    """Each ordered pair present independently per interval with probability ``density``."""
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    lo, hi = p_range
    if not 0.0 <= lo <= hi <= 1.0:
        raise ValueError("p_range must satisfy 0 <= lo <= hi <= 1")
    rng = np.random.default_rng(rng)
    us, vs, ts = [], [], []
    for t in range(1, n_intervals + 1):
        present = rng.random((n_nodes, n_nodes)) < density
        np.fill_diagonal(present, False)
        u, v = np.nonzero(present)
        us.append(u)
        vs.append(v)
        ts.append(np.full(len(u), t))
    u, v, t = np.concatenate(us), np.concatenate(vs), np.concatenate(ts)
    p = rng.uniform(lo, hi, size=len(u)) if hi > lo else np.full(len(u), hi)
    return from_arrays(n_nodes, n_intervals, u, v, t, p)


def late_bloomer(n_nodes: int, n_intervals: int, rng, *, n_hubs: int | None = None, hub_fanout: int | None = None,
                 hub_p: float = 0.05, mean_degree: float = 2.0, activity_sigma: float = 1.0,
                 p_range: tuple[float, float] = (0.0, 0.2)) -> TemporalNetwork:
    """Planted family where static degree is misleading.

    Regular nodes exchange a heterogeneous background of contacts in every
    interval (endpoints drawn in proportion to lognormal activity weights, about
    ``mean_degree`` out-contacts per node and interval). ``n_hubs`` randomly
    chosen hubs (default a tenth of the nodes) appear only in the final
    interval, each with ``hub_fanout`` outgoing contacts (default 60% of the
    nodes) and no incoming ones: the largest distinct-contact counts in the
    network, yet a hub becomes active only when it is the seed.
    """
    rng = np.random.default_rng(rng)
    if n_hubs is None:
        n_hubs = n_nodes // 10
    if hub_fanout is None:
        hub_fanout = int(round(0.6 * n_nodes))
    if not 0 <= n_hubs < n_nodes:
        raise ValueError("n_hubs must lie in [0, n_nodes)")
    perm = rng.permutation(n_nodes)
    hubs, regular = np.sort(perm[:n_hubs]), np.sort(perm[n_hubs:])
    weights = rng.lognormal(0.0, activity_sigma, size=len(regular))
    weights /= weights.sum()
    lo, hi = p_range
    n_bg = int(round(mean_degree * len(regular)))
    us, vs, ts, ps = [], [], [], []
    for t in range(1, n_intervals + 1):
        u = regular[rng.choice(len(regular), size=n_bg, p=weights)]
        v = regular[rng.choice(len(regular), size=n_bg, p=weights)]
        keep = u != v
        us.append(u[keep])
        vs.append(v[keep])
        ts.append(np.full(int(keep.sum()), t))
        ps.append(rng.uniform(lo, hi, size=int(keep.sum())))
    fan = min(hub_fanout, len(regular))
    for h in hubs:
        targets = rng.choice(regular, size=fan, replace=False)
        us.append(np.full(fan, h))
        vs.append(targets)
        ts.append(np.full(fan, n_intervals))
        ps.append(np.full(fan, hub_p))
    return from_arrays(n_nodes, n_intervals, np.concatenate(us), np.concatenate(vs),
                       np.concatenate(ts), np.concatenate(ps))


def generate_synthetic_network(n_nodes: int, n_intervals: int, family: str = "er", rng=None,
                               **params) -> TemporalNetwork:
    if rng is None:
        raise ValueError("an explicit rng or seed is required")
    if family == "er":
        return erdos_renyi(n_nodes, n_intervals, rng, **params)
    if family == "late_bloomer":
        return late_bloomer(n_nodes, n_intervals, rng, **params)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
