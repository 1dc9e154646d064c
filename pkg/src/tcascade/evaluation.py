"""Performance measures: reverse spread, binary success rate, expected spread."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .cascade import CascadeSample, simulate
from .sampler import Hypergraph
from .solvers import SolutionSet
from .temporal_graph import TemporalNetwork

DEFAULT_SIMS = 1000


@dataclass(frozen=True)
class MetricReport:
    method: str
    k: int
    reverse_spread: float
    binary_success_rate: float
    binary_success_se: float
    expected_spread: float
    expected_spread_se: float
    n_sims: int
    window: tuple[int, int]
    nodes: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["window"] = list(self.window)
        d["nodes"] = list(self.nodes)
        return d


def reverse_spread(h: Hypergraph, nodes: Iterable[int]) -> float:
    """``|V| * covered nets / |N|``: expected number of seeds that reach the set."""
    if h.n_nets == 0:
        raise ValueError("reverse spread needs a hypergraph with at least one net")
    return h.node_count * h.degree_of_set(nodes) / h.n_nets


def success_indicators(sample: CascadeSample, nodes: Iterable[int], count_seed: bool = True) -> np.ndarray:
    nodes = list(nodes)
    if not nodes:
        return np.zeros(sample.n_sims, dtype=bool)
    return sample.hit_counts(nodes, exclude_source=not count_seed) > 0


def binary_success_rate(net: TemporalNetwork, nodes: Iterable[int], window=None, n_sims: int = DEFAULT_SIMS,
                        seed: int = 0, *, count_seed: bool = True, workers: int | None = None) -> float:
    """Fraction of single-random-seed runs whose final active set meets ``nodes``.

    With ``count_seed=False`` a run whose only hit is its own seed does not count.
    """
    sample = simulate(net, window, n_sims, seed, workers=workers)
    return float(success_indicators(sample, nodes, count_seed).mean())


def expected_spread(net: TemporalNetwork, nodes: Iterable[int], window=None, n_sims: int = DEFAULT_SIMS,
                    seed: int = 0, *, workers: int | None = None) -> float:
    """Mean number of ``nodes`` active at the end of a single-random-seed run."""
    nodes = list(nodes)
    if not nodes:
        return 0.0
    sample = simulate(net, window, n_sims, seed, workers=workers)
    return float(sample.hit_counts(nodes).mean())


def normalize(values: Sequence[float]) -> list[float]:
    """Affine map of ``values`` onto [0, 10]; all-equal input maps to zeros."""
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        raise ValueError("normalize needs at least one value")
    lo, hi = x.min(), x.max()
    if hi == lo:
        return [0.0] * x.size
    return (10.0 * (x - lo) / (hi - lo)).tolist()


def _se(x: np.ndarray) -> float:
    return float(x.std(ddof=1) / np.sqrt(len(x))) if len(x) > 1 else 0.0


def evaluate_solutions(net: TemporalNetwork, h: Hypergraph, solutions: Sequence[SolutionSet], window=None,
                       n_sims: int = DEFAULT_SIMS, seed: int = 0, *, count_seed: bool = True,
                       workers: int | None = None) -> list[MetricReport]:
    """Score every solution against one shared batch of simulations (common random numbers).

    Reverse spread is read off ``h``; success and expected spread come from
    ``n_sims`` fresh runs on the ``evaluate`` stream, independent of the
    sampling stream used to build ``h``.
    """
    w = net.window(window)
    sample = simulate(net, w, n_sims, seed, workers=workers)
    reports = []
    for sol in solutions:
        nodes = list(sol.nodes)
        hits = sample.hit_counts(nodes) if nodes else np.zeros(n_sims, dtype=np.int64)
        succ = success_indicators(sample, nodes, count_seed).astype(float)
        reports.append(MetricReport(
            method=sol.method, k=sol.k,
            reverse_spread=reverse_spread(h, nodes),
            binary_success_rate=float(succ.mean()), binary_success_se=_se(succ),
            expected_spread=float(hits.mean()), expected_spread_se=_se(hits.astype(float)),
            n_sims=n_sims, window=w.as_tuple(), nodes=tuple(nodes)))
    return reports


MEASURES = ("reverse_spread", "binary_success_rate", "expected_spread")


def metric_table(reports: Sequence[MetricReport]) -> list[dict]:
    """Rows with raw measures plus ``*_norm`` columns normalized across all rows."""
    rows = [r.to_dict() for r in reports]
    for m in MEASURES:
        if rows:
            for row, val in zip(rows, normalize([row[m] for row in rows])):
                row[m + "_norm"] = round(val, 12)
    return rows


def table_to_csv(rows: Sequence[dict]) -> str:
    cols = ["method", "k", "window", *MEASURES, *(m + "_norm" for m in MEASURES),
            "binary_success_se", "expected_spread_se", "n_sims"]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        out = dict(row)
        out["window"] = f"{row['window'][0]}-{row['window'][1]}"
        writer.writerow(out)
    return buf.getvalue()


def table_to_json(rows: Sequence[dict]) -> str:
    return json.dumps(rows, sort_keys=True, indent=2)
