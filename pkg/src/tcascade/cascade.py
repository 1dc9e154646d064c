"""T-IC realizations: one IC process per interval, active sets carried forward.

Within interval ``t`` every active node is dequeued once (FIFO), and attempts each
currently inactive out-neighbour once with that interval's probability; nodes
activated mid-interval join the queue under the same ``t``. A failed attempt may
be retried in a later interval, never in the same one.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernel
from .errors import ResourceBoundError
from .temporal_graph import TemporalNetwork, Window

ENUMERATION_BOUND = 20


@dataclass(frozen=True)
class CascadeTrace:
    """One T-IC realization over ``window``.

    ``order`` lists activated nodes by activation time (seeds first);
    ``activated_in[k]`` is the interval in which ``order[k]`` became active
    (``window.i - 1`` for seeds); ``parent[k]`` is the node whose attempt
    succeeded (-1 for seeds).
    """

    seeds: tuple[int, ...]
    window: Window
    order: tuple[int, ...]
    activated_in: tuple[int, ...]
    parent: tuple[int, ...]

    @property
    def final(self) -> frozenset[int]:
        return frozenset(self.order)

    def newly_activated(self, t: int) -> list[int]:
        return [v for v, a in zip(self.order, self.activated_in) if a == t]

    def active_sets(self) -> list[frozenset[int]]:
        """``[A_i, A_{i+1}, ..., A_{j+1}]`` where ``A_i`` is the seed set."""
        out = [frozenset(self.seeds)]
        for t in range(self.window.i, self.window.j + 1):
            out.append(frozenset(v for v, a in zip(self.order, self.activated_in) if a <= t))
        return out

    def to_jsonl(self) -> str:
        """One JSON object per interval with the nodes activated during it."""
        lines = []
        count = len(self.seeds)
        for t in range(self.window.i, self.window.j + 1):
            new = self.newly_activated(t)
            count += len(new)
            lines.append(json.dumps({"interval": t, "newly_activated": new, "active_count": count}))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CascadeSample:
    """Final active sets of many simulations, flattened CSR-style.

    Each set lists its source(s) first. For single-source simulations
    ``pins[offsets[k]]`` is the source of simulation ``k``.
    """

    node_count: int
    pins: np.ndarray
    offsets: np.ndarray
    parents: np.ndarray | None = None
    times: np.ndarray | None = None

    @property
    def n_sims(self) -> int:
        return len(self.offsets) - 1

    def sizes(self) -> np.ndarray:
        return np.diff(self.offsets)

    def members(self, k: int) -> np.ndarray:
        return self.pins[self.offsets[k]:self.offsets[k + 1]]

    def sources(self) -> np.ndarray:
        return self.pins[self.offsets[:-1]]

    def _sim_of_pin(self) -> np.ndarray:
        return np.repeat(np.arange(self.n_sims), self.sizes())

    def hit_counts(self, nodes: Iterable[int], exclude_source: bool = False) -> np.ndarray:
        """Per simulation, how many of ``nodes`` end active."""
        mask = np.zeros(self.node_count, dtype=bool)
        mask[np.fromiter(nodes, dtype=np.int64)] = True
        inside = mask[self.pins]
        if exclude_source:
            inside[self.offsets[:-1]] = False
        return np.bincount(self._sim_of_pin()[inside], minlength=self.n_sims)

    def activation_counts(self) -> np.ndarray:
        return np.bincount(self.pins, minlength=self.node_count)


def _as_sources(net: TemporalNetwork, seeds) -> np.ndarray:
    src = np.unique(np.asarray(list(seeds), dtype=np.int64))
    if src.size == 0:
        raise ValueError("seed set must be nonempty")
    if src.min() < 0 or src.max() >= net.node_count:
        raise ValueError(f"seed ids must lie in [0, {net.node_count})")
    return src


def simulate(net: TemporalNetwork, window=None, n_sims: int = 1000, seed: int = 0, *,
             stream: str = "evaluate", sources: Sequence[int] | None = None, record: bool = False,
             workers: int | None = None) -> CascadeSample:
    """Run ``n_sims`` T-IC processes.

    With ``sources=None`` each simulation starts from a single uniformly random
    node; otherwise every simulation starts from all of ``sources``. Simulation
    ``k`` under a given ``(seed, stream)`` always uses the same random stream, so
    two calls differing only in network records, window or evaluated sets share
    common random numbers.
    """
    w = net.window(window)
    src = None if sources is None else _as_sources(net, sources)
    pins, offsets, parents, times = _kernel.run_simulations(
        net, w, n_sims, _kernel.derive_key(seed, stream), src, record, workers)
    return CascadeSample(net.node_count, pins, offsets, parents, times)


def run_tic(net: TemporalNetwork, seeds: Iterable[int], window=None, seed: int = 0, *,
            sim: int = 0) -> CascadeTrace:
    """Execute one T-IC process from ``seeds``; ``(seed, sim)`` pins the random stream."""
    w = net.window(window)
    src = _as_sources(net, seeds)
    pins, _, parents, times = _kernel.run_simulations(
        net, w, 1, _kernel.derive_key(seed, "trace"), src, True, 1, sim_offset=sim)
    return CascadeTrace(tuple(int(s) for s in src), w, tuple(pins.tolist()),
                        tuple(times.tolist()), tuple(parents.tolist()))


def estimate_activation_probabilities(net: TemporalNetwork, window=None, n_sims: int = 10000,
                                      seed: int = 0, *, workers: int | None = None) -> np.ndarray:
    """Monte Carlo ``p_v``: activation frequency under single uniformly random seeds."""
    sample = simulate(net, window, n_sims, seed, stream="activation", workers=workers)
    return sample.activation_counts() / sample.n_sims


# -- exhaustive oracle ---------------------------------------------------------

def _window_pairs(net: TemporalNetwork, w: Window) -> list[tuple[int, int, int, float]]:
    return [r for r in net.records() if w.i <= r[2] <= w.j]


def _closure(start: frozenset[int], live_by_t: dict[int, dict[int, list[int]]], w: Window) -> frozenset[int]:
    active = set(start)
    for t in range(w.i, w.j + 1):
        adj = live_by_t.get(t, {})
        stack = list(active)
        while stack:
            u = stack.pop()
            for v in adj.get(u, ()):
                if v not in active:
                    active.add(v)
                    stack.append(v)
    return frozenset(active)


def _live_outcomes(net: TemporalNetwork, w: Window, max_pairs: int):
    pairs = _window_pairs(net, w)
    if len(pairs) > max_pairs:
        raise ResourceBoundError(f"{len(pairs)} (edge, interval) pairs exceed enumeration bound {max_pairs}")
    for outcome in itertools.product((False, True), repeat=len(pairs)):
        prob = 1.0
        live: dict[int, dict[int, list[int]]] = {}
        for (u, v, t, p), on in zip(pairs, outcome):
            prob *= p if on else 1.0 - p
            if on:
                live.setdefault(t, {}).setdefault(u, []).append(v)
        if prob > 0.0:
            yield prob, live


def exact_final_distribution(net: TemporalNetwork, seeds: Iterable[int], window=None,
                             max_pairs: int = ENUMERATION_BOUND) -> dict[frozenset[int], float]:
    """Exact distribution of the final active set from a fixed seed set.

    Enumerates every live/dead outcome of the ``(edge, interval)`` pairs in the
    window; a live pair is traversable in its interval only. Attempts are
    independent Bernoulli draws, so reachability over live pairs reproduces the
    queue-based process exactly.
    """
    w = net.window(window)
    start = frozenset(int(s) for s in seeds)
    dist: dict[frozenset[int], float] = {}
    for prob, live in _live_outcomes(net, w, max_pairs):
        final = _closure(start, live, w)
        dist[final] = dist.get(final, 0.0) + prob
    return dist


def exact_activation_probabilities(net: TemporalNetwork, window=None,
                                   max_pairs: int = ENUMERATION_BOUND) -> np.ndarray:
    """Exact ``p_v`` under a uniformly random single seed, by enumeration."""
    w = net.window(window)
    n = net.node_count
    out = np.zeros(n)
    for prob, live in _live_outcomes(net, w, max_pairs):
        for s in range(n):
            for v in _closure(frozenset((s,)), live, w):
                out[v] += prob
    return out / n
