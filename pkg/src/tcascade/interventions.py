"""Lockdown-style edge removal, backward tracing and venue exposure."""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .cascade import simulate
from .temporal_graph import TemporalNetwork


@dataclass
class VenueMap:
    """Venue attribution of edge records plus venue metadata."""

    record_venue: dict[tuple[int, int, int], str] = field(default_factory=dict)
    category: dict[str, str] = field(default_factory=dict)
    visits: dict[str, int] = field(default_factory=dict)

    def venues_of(self, net: TemporalNetwork) -> list[str | None]:
        """Venue of each stored record, in stored order (None when unattributed)."""
        return [self.record_venue.get((u, v, t)) for u, v, t, _ in net.records()]

    @classmethod
    def by_source_node(cls, net: TemporalNetwork) -> "VenueMap":
        """Treat each node as the venue of its outgoing records (region-level data without venues)."""
        return cls({(u, v, t): str(u) for u, v, t, _ in net.records()})


def _removal_count(fraction: float, n_records: int) -> int:
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must lie in [0, 1] (got {fraction})")
    # guard against binary representation pushing e.g. 0.3 * 10 just below 3
    return min(n_records, math.floor(fraction * n_records + 1e-9))


def drop_edges_random(net: TemporalNetwork, fraction: float, rng) -> TemporalNetwork:
    """Remove ``floor(fraction * records)`` stored records uniformly without replacement."""
    m = _removal_count(fraction, net.record_count)
    rng = np.random.default_rng(rng)
    mask = np.zeros(net.record_count, dtype=bool)
    mask[rng.choice(net.record_count, size=m, replace=False)] = True
    return net.without_records(mask)


def _largest_remainder(total: int, weights: Sequence[int]) -> list[int]:
    w = np.asarray(weights, dtype=float)
    quotas = total * w / w.sum()
    alloc = np.floor(quotas).astype(int)
    short = total - int(alloc.sum())
    if short:
        frac = quotas - alloc
        order = sorted(range(len(w)), key=lambda i: (-frac[i], i))
        for i in order[:short]:
            alloc[i] += 1
    return alloc.tolist()


def priority_allocation(net: TemporalNetwork, fraction: float, venue_map: VenueMap,
                        top_v: int = 50) -> dict[str, int]:
    """Removals per venue: the busiest ``top_v`` venues share the total in proportion to their records."""
    if not venue_map.record_venue:
        raise ValueError("venue map is empty")
    if top_v < 1:
        raise ValueError("top_v must be >= 1")
    m = _removal_count(fraction, net.record_count)
    counts = Counter(v for v in venue_map.venues_of(net) if v is not None)
    if not counts:
        raise ValueError("no stored record is attributed to a venue")
    top = sorted(counts, key=lambda v: (-counts[v], v))[:top_v]
    capacity = sum(counts[v] for v in top)
    if m >= capacity:
        return {v: counts[v] for v in top}
    return dict(zip(top, _largest_remainder(m, [counts[v] for v in top])))


def drop_edges_priority(net: TemporalNetwork, fraction: float, venue_map: VenueMap, top_v: int = 50,
                        rng=None) -> TemporalNetwork:
    """Remove the same number of records as :func:`drop_edges_random`, concentrated on busy venues.

    Within a venue, records are sampled uniformly without replacement. When the
    top venues hold fewer records than the removal total, all of them go and the
    remainder is drawn uniformly from the other records.
    """
    rng = np.random.default_rng(rng)
    m = _removal_count(fraction, net.record_count)
    alloc = priority_allocation(net, fraction, venue_map, top_v)
    venues = venue_map.venues_of(net)
    by_venue = defaultdict(list)
    for idx, v in enumerate(venues):
        by_venue[v].append(idx)
    mask = np.zeros(net.record_count, dtype=bool)
    for v, n_remove in alloc.items():
        recs = np.asarray(by_venue[v], dtype=np.int64)
        if n_remove:
            mask[recs[rng.choice(len(recs), size=n_remove, replace=False)]] = True
    rest = m - int(mask.sum())
    if rest > 0:
        pool = np.flatnonzero(~mask)
        mask[pool[rng.choice(len(pool), size=rest, replace=False)]] = True
    return net.without_records(mask)


@dataclass(frozen=True)
class Reduction:
    percent: float
    se: float
    baseline_mean: float
    modified_mean: float
    n_sims: int

    def __float__(self):
        return self.percent


def spread_reduction(net: TemporalNetwork, modified: TemporalNetwork, seeds: Iterable[int], window=None,
                     n_sims: int = 20, seed: int = 0, *, workers: int | None = None) -> Reduction:
    """Percent drop in mean final spread from ``seeds`` after modification.

    Both networks are simulated with the same per-run random streams.
    """
    if net.node_count != modified.node_count:
        raise ValueError("networks must share the node space")
    seeds = list(seeds)
    w = net.window(window)
    base = simulate(net, w, n_sims, seed, stream="intervene", sources=seeds, workers=workers).sizes()
    mod = simulate(modified, w, n_sims, seed, stream="intervene", sources=seeds, workers=workers).sizes()
    b, m = base.mean(), mod.mean()
    if b == 0:
        raise ValueError("baseline spread is zero")
    r = m / b
    if n_sims > 1:
        cov = np.cov(mod.astype(float), base.astype(float), ddof=1)
        var_r = (cov[0, 0] - 2 * r * cov[0, 1] + r * r * cov[1, 1]) / (b * b * n_sims)
        se = 100.0 * math.sqrt(max(var_r, 0.0))
    else:
        se = 0.0
    return Reduction(100.0 * (1.0 - r), se, float(b), float(m), int(n_sims))


@dataclass(frozen=True)
class TracingResult:
    ranking: tuple[tuple[int, int], ...]  # (node, participation count), most frequent first
    contributors: tuple[int, ...]
    contribution_percent: float
    activation_events: int


def backward_contribution(net: TemporalNetwork, nodes: Iterable[int], window=None, n_sims: int = 1000,
                          top_c: int | None = None, seed: int = 0, *, sources: Sequence[int] | None = None,
                          include_members: bool = False, workers: int | None = None) -> TracingResult:
    """Rank upstream spreaders of activations inside ``nodes``.

    Every time a member of ``nodes`` ends a run active, its transmission chain
    (parent, grandparent, ... up to the run's seed) is traced back; the chain's
    nodes outside ``nodes`` are that event's participants. ``sources`` replaces
    random seeding with one run per listed source.
    """
    target = sorted(set(int(x) for x in nodes))
    if not target:
        raise ValueError("solution set must be nonempty")
    in_target = set(target)
    top_c = len(target) if top_c is None else int(top_c)
    w = net.window(window)
    if sources is None:
        samples = [simulate(net, w, n_sims, seed, stream="trace", record=True, workers=workers)]
    else:
        samples = [simulate(net, w, 1, seed, stream="trace", sources=[s], record=True, workers=1)
                   for s in sources]

    counts: Counter[int] = Counter()
    events: list[frozenset[int]] = []
    for sample in samples:
        for k in range(sample.n_sims):
            lo, hi = sample.offsets[k], sample.offsets[k + 1]
            members = sample.pins[lo:hi].tolist()
            parent = dict(zip(members, sample.parents[lo:hi].tolist()))
            for s in members:
                if s not in in_target:
                    continue
                chain = set()
                x = parent[s]
                while x != -1:
                    if include_members or x not in in_target:
                        chain.add(x)
                    x = parent[x]
                counts.update(chain)
                events.append(frozenset(chain))

    ranking = tuple(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])))
    top = frozenset(v for v, _ in ranking[:top_c])
    if not events:
        return TracingResult(ranking, tuple(v for v, _ in ranking[:top_c]), 0.0, 0)
    share = sum(1 for e in events if e & top) / len(events)
    return TracingResult(ranking, tuple(v for v, _ in ranking[:top_c]), 100.0 * share, len(events))


def venue_coverage(nodes: Iterable[int], venue_map: VenueMap,
                   checkins: Iterable[tuple[int, str, int]], window=None) -> tuple[list[tuple[str, int]], int]:
    """Distinct venues visited by ``nodes`` (optionally within an interval window), by category.

    ``checkins`` holds ``(node, venue, interval)`` visits. Returns the category
    histogram sorted by count (descending) and the distinct venue total.
    """
    members = set(int(x) for x in nodes)
    lo, hi = (window if window is not None else (-math.inf, math.inf))
    venues = {venue for node, venue, t in checkins if node in members and lo <= t <= hi}
    hist = Counter(venue_map.category.get(v, "unknown") for v in venues)
    return sorted(hist.items(), key=lambda kv: (-kv[1], kv[0])), len(venues)
