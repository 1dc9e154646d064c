"""Solution-set selection: RSM greedy max cover, ESM top-k, and baselines.

Ties are broken by lowest node id everywhere.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ResourceBoundError
from .sampler import Hypergraph
from .temporal_graph import TemporalNetwork

EXHAUSTIVE_BOUND = 10**6


@dataclass(frozen=True)
class SolutionSet:
    method: str
    k: int
    nodes: tuple[int, ...]
    coverage: tuple[int, ...] = field(default=())  # covered nets after each pick, when known

    def to_dict(self) -> dict:
        d = asdict(self)
        d["nodes"] = list(self.nodes)
        d["coverage"] = list(self.coverage)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "SolutionSet":
        return cls(d["method"], int(d["k"]), tuple(int(x) for x in d["nodes"]),
                   tuple(int(x) for x in d.get("coverage", ())))


def _clamp_k(k: int, node_count: int) -> int:
    if k < 1:
        raise ValueError(f"k must be >= 1 (got {k})")
    if k > node_count:
        warnings.warn(f"k={k} exceeds node count {node_count}; clamped", stacklevel=3)
        return node_count
    return k


def _coverage_trace(h: Hypergraph, nodes) -> tuple[int, ...]:
    covered = np.zeros(h.n_nets, dtype=bool)
    out = []
    for v in nodes:
        covered[h.incident_nets(v)] = True
        out.append(int(covered.sum()))
    return tuple(out)


def rsm_solve(h: Hypergraph, k: int) -> SolutionSet:
    """Greedy maximum coverage over the nets.

    Degrees are maintained lazily: when a net becomes covered, every pin in it
    loses one degree, so each net is touched once over the whole run.
    """
    k = _clamp_k(k, h.node_count)
    deg = h.degrees().astype(np.int64)
    covered = np.zeros(h.n_nets, dtype=bool)
    chosen = np.zeros(h.node_count, dtype=bool)
    picks, coverage = [], []
    total = 0
    for _ in range(k):
        masked = np.where(chosen, -1, deg)
        v = int(np.argmax(masked))  # first maximum = lowest id
        picks.append(v)
        chosen[v] = True
        nets = h.incident_nets(v)
        fresh = nets[~covered[nets]]
        if fresh.size:
            covered[fresh] = True
            total += int(fresh.size)
            starts = h.net_offsets[fresh]
            sizes = h.net_offsets[fresh + 1] - starts
            idx = np.repeat(starts - np.cumsum(sizes) + sizes, sizes) + np.arange(int(sizes.sum()))
            deg -= np.bincount(h.net_pins[idx], minlength=h.node_count)
        coverage.append(total)
    return SolutionSet("rsm", k, tuple(picks), tuple(coverage))


def esm_solve(h: Hypergraph, k: int) -> SolutionSet:
    """Top-k nodes by hypergraph degree."""
    k = _clamp_k(k, h.node_count)
    order = np.argsort(-h.degrees(), kind="stable")[:k]
    nodes = tuple(int(v) for v in order)
    return SolutionSet("esm", k, nodes, _coverage_trace(h, nodes))


def temporal_degrees(net: TemporalNetwork, window=None) -> np.ndarray:
    """Distinct ``(neighbour, interval)`` presences per node inside the window, either direction."""
    w = net.window(window)
    u, v, t, _ = net.record_arrays()
    keep = (t >= w.i) & (t <= w.j)
    u, v, t = u[keep], v[keep], t[keep]
    a = np.concatenate([u, v])
    b = np.concatenate([v, u])
    tt = np.concatenate([t, t])
    if a.size == 0:
        return np.zeros(net.node_count, dtype=np.int64)
    triples = np.unique(np.stack([a, b, tt], axis=1), axis=0)
    return np.bincount(triples[:, 0], minlength=net.node_count)


def max_deg_solve(net: TemporalNetwork, window=None, k: int = 10, h: Hypergraph | None = None) -> SolutionSet:
    k = _clamp_k(k, net.node_count)
    order = np.argsort(-temporal_degrees(net, window), kind="stable")[:k]
    nodes = tuple(int(v) for v in order)
    return SolutionSet("maxdeg", k, nodes, _coverage_trace(h, nodes) if h is not None else ())


def random_solve(node_count: int, k: int, rng, h: Hypergraph | None = None) -> SolutionSet:
    """Uniform k-subset, returned as a prefix of a random permutation (so k-nested for a fixed rng seed)."""
    k = _clamp_k(k, node_count)
    rng = np.random.default_rng(rng)
    nodes = tuple(int(v) for v in rng.permutation(node_count)[:k])
    return SolutionSet("random", k, nodes, _coverage_trace(h, nodes) if h is not None else ())


def exhaustive_cover_opt(h: Hypergraph, k: int, bound: int = EXHAUSTIVE_BOUND) -> tuple[tuple[int, ...], int]:
    """True maximum coverage by enumeration of all k-subsets (lexicographically first optimum)."""
    k = min(max(int(k), 0), h.node_count)
    if math.comb(h.node_count, k) > bound:
        raise ResourceBoundError(f"C({h.node_count}, {k}) subsets exceed bound {bound}")
    masks = []
    for v in range(h.node_count):
        m = 0
        for net in h.incident_nets(v).tolist():
            m |= 1 << net
        masks.append(m)
    best, best_cov = tuple(range(k)), -1
    for combo in itertools.combinations(range(h.node_count), k):
        m = 0
        for v in combo:
            m |= masks[v]
        cov = m.bit_count() if hasattr(m, "bit_count") else bin(m).count("1")
        if cov > best_cov:
            best, best_cov = combo, cov
    return best, max(best_cov, 0)


METHODS = ("rsm", "esm", "maxdeg", "random")


def solve(method: str, k: int, *, h: Hypergraph | None = None, net: TemporalNetwork | None = None,
          window=None, rng=None) -> SolutionSet:
    """Dispatch by method name."""
    if method == "rsm":
        return rsm_solve(h, k)
    if method == "esm":
        return esm_solve(h, k)
    if method == "maxdeg":
        return max_deg_solve(net, window, k, h)
    if method == "random":
        if rng is None:
            raise ValueError("random method needs an explicit rng seed")
        n = h.node_count if h is not None else net.node_count
        return random_solve(n, k, rng, h)
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
