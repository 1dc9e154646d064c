"""Temporal network with a separate propagation probability per interval.

Storage is one CSR block per interval, flattened: the row of source ``u`` in
interval ``t`` (1-based) is ``(t - 1) * node_count + u``. Zero probabilities are
never stored, so a missing ``(u, v, t)`` reads back as 0.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DataError

META_PREFIX = "# tcascade"


@dataclass(frozen=True)
class Window:
    """Closed interval range ``[i, j]`` of the time domain (1-based)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i < 1 or self.j < self.i:
            raise ValueError(f"invalid window [{self.i}, {self.j}]")

    def __len__(self):
        return self.j - self.i + 1

    def as_tuple(self) -> tuple[int, int]:
        return (self.i, self.j)


@dataclass(frozen=True, eq=False)
class TemporalNetwork:
    node_count: int
    interval_count: int
    indptr: np.ndarray  # int64, length interval_count * node_count + 1
    indices: np.ndarray  # int32 targets, ascending within each row
    probs: np.ndarray  # float64 in (0, 1]
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        for name in ("indptr", "indices", "probs"):
            getattr(self, name).setflags(write=False)

    # -- queries -----------------------------------------------------------

    @property
    def record_count(self) -> int:
        return int(self.indices.shape[0])

    def window(self, window=None) -> Window:
        """Normalize ``None`` / tuple / Window into a Window checked against this network."""
        if window is None:
            w = Window(1, self.interval_count)
        elif isinstance(window, Window):
            w = window
        else:
            w = Window(int(window[0]), int(window[1]))
        if w.j > self.interval_count:
            raise ValueError(f"window [{w.i}, {w.j}] exceeds interval count {self.interval_count}")
        return w

    def _check_node(self, u):
        if not 0 <= u < self.node_count:
            raise IndexError(f"node id {u} out of range [0, {self.node_count})")

    def _check_interval(self, t):
        if not 1 <= t <= self.interval_count:
            raise IndexError(f"interval {t} out of range [1, {self.interval_count}]")

    def _row(self, u, t) -> tuple[int, int]:
        r = (t - 1) * self.node_count + u
        return int(self.indptr[r]), int(self.indptr[r + 1])

    def probability_at(self, u: int, v: int, t: int) -> float:
        self._check_node(u)
        self._check_node(v)
        self._check_interval(t)
        lo, hi = self._row(u, t)
        pos = lo + int(np.searchsorted(self.indices[lo:hi], v))
        if pos < hi and self.indices[pos] == v:
            return float(self.probs[pos])
        return 0.0

    def neighbors_at(self, u: int, t: int) -> list[tuple[int, float]]:
        self._check_node(u)
        self._check_interval(t)
        lo, hi = self._row(u, t)
        return [(int(v), float(p)) for v, p in zip(self.indices[lo:hi], self.probs[lo:hi])]

    def record_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """All stored records as parallel ``(u, v, t, p)`` arrays, sorted by (t, u, v)."""
        rows = np.repeat(np.arange(self.interval_count * self.node_count), np.diff(self.indptr))
        t = rows // self.node_count + 1
        u = rows % self.node_count
        return u.astype(np.int64), self.indices.astype(np.int64), t.astype(np.int64), self.probs.copy()

    def records(self) -> Iterator[tuple[int, int, int, float]]:
        u, v, t, p = self.record_arrays()
        for rec in zip(u.tolist(), v.tolist(), t.tolist(), p.tolist()):
            yield rec

    def transpose(self) -> "TemporalNetwork":
        """Reverse every directed edge, keeping its interval and probability.

        Provided for analysis only: random reachable sets must be sampled on the
        network as given, never on its transpose.
        """
        u, v, t, p = self.record_arrays()
        return from_arrays(self.node_count, self.interval_count, v, u, t, p, labels=self.labels)

    def without_records(self, mask: np.ndarray) -> "TemporalNetwork":
        """Copy keeping only the records where ``mask`` is False (record order as stored)."""
        keep = ~np.asarray(mask, dtype=bool)
        u, v, t, p = self.record_arrays()
        return from_arrays(self.node_count, self.interval_count, u[keep], v[keep], t[keep], p[keep],
                           labels=self.labels, validate=False)

    def __eq__(self, other):
        if not isinstance(other, TemporalNetwork):
            return NotImplemented
        return (self.node_count == other.node_count
                and self.interval_count == other.interval_count
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.probs, other.probs))

    __hash__ = None

    def __repr__(self):
        return (f"TemporalNetwork(node_count={self.node_count}, interval_count={self.interval_count}, "
                f"records={self.record_count})")


def from_arrays(node_count, interval_count, u, v, t, p, *, labels=None, validate=True) -> TemporalNetwork:
    """Build from parallel record arrays. Later duplicates of ``(u, v, t)`` win."""
    node_count = int(node_count)
    interval_count = int(interval_count)
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    if interval_count < 1:
        raise ValueError("interval_count must be >= 1")
    u = np.asarray(u, dtype=np.int64).ravel()
    v = np.asarray(v, dtype=np.int64).ravel()
    t = np.asarray(t, dtype=np.int64).ravel()
    p = np.asarray(p, dtype=np.float64).ravel()
    if not (len(u) == len(v) == len(t) == len(p)):
        raise ValueError("record arrays differ in length")
    if validate and len(u):
        bad = np.flatnonzero((u < 0) | (u >= node_count) | (v < 0) | (v >= node_count))
        if bad.size:
            k = bad[0]
            raise ValueError(f"record {k}: node id out of range ({u[k]}, {v[k]}) for {node_count} nodes")
        bad = np.flatnonzero((t < 1) | (t > interval_count))
        if bad.size:
            raise ValueError(f"record {bad[0]}: interval {t[bad[0]]} out of range [1, {interval_count}]")
        bad = np.flatnonzero(~((p >= 0.0) & (p <= 1.0)))
        if bad.size:
            raise ValueError(f"record {bad[0]}: probability {p[bad[0]]} outside [0, 1]")
        bad = np.flatnonzero(u == v)
        if bad.size:
            raise ValueError(f"record {bad[0]}: self-loop on node {u[bad[0]]}")

    order = np.lexsort((np.arange(len(u)), v, u, t))
    u, v, t, p = u[order], v[order], t[order], p[order]
    if len(u):
        last = np.ones(len(u), dtype=bool)
        last[:-1] = (t[1:] != t[:-1]) | (u[1:] != u[:-1]) | (v[1:] != v[:-1])
        last &= p > 0.0
        u, v, t, p = u[last], v[last], t[last], p[last]

    rows = (t - 1) * node_count + u
    counts = np.bincount(rows, minlength=interval_count * node_count)
    indptr = np.zeros(interval_count * node_count + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != node_count:
            raise ValueError("labels must have one entry per node")
    return TemporalNetwork(node_count, interval_count, indptr,
                           v.astype(np.int32), p.astype(np.float64), labels)


def build_network(node_count: int, records: Iterable[Sequence], interval_count: int | None = None,
                  *, labels=None) -> TemporalNetwork:
    """Build a network from ``(u, v, t, p)`` records.

    ``interval_count`` is never inferred from the data unless omitted, in which case
    the largest interval present (at least 1) is used.
    """
    recs = list(records)
    if recs:
        arr = np.array([(r[0], r[1], r[2]) for r in recs], dtype=np.int64)
        p = np.array([r[3] for r in recs], dtype=np.float64)
        u, v, t = arr[:, 0], arr[:, 1], arr[:, 2]
    else:
        u = v = t = np.empty(0, dtype=np.int64)
        p = np.empty(0, dtype=np.float64)
    if interval_count is None:
        interval_count = max(1, int(t.max()) if len(t) else 1)
    return from_arrays(node_count, interval_count, u, v, t, p, labels=labels)


def transpose(net: TemporalNetwork) -> TemporalNetwork:
    return net.transpose()


# -- canonical CSV (u,v,t,p) -------------------------------------------------

def write_network_csv(net: TemporalNetwork, path) -> None:
    """Write the canonical ``u,v,t,p`` file with a metadata comment line."""
    u, v, t, p = net.record_arrays()
    buf = io.StringIO()
    buf.write(f"{META_PREFIX} nodes={net.node_count} intervals={net.interval_count}\n")
    buf.write("u,v,t,p\n")
    for a, b, c, d in zip(u.tolist(), v.tolist(), t.tolist(), p.tolist()):
        buf.write(f"{a},{b},{c},{d!r}\n")
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def _parse_meta(line: str) -> dict[str, int]:
    out = {}
    for tok in line[len(META_PREFIX):].split():
        if "=" in tok:
            k, val = tok.split("=", 1)
            try:
                out[k] = int(val)
            except ValueError:
                pass
    return out


def read_network_csv(path, node_count: int | None = None, interval_count: int | None = None) -> TemporalNetwork:
    """Read a canonical ``u,v,t,p`` file.

    Node and interval counts come from the arguments, else from the metadata
    comment written by :func:`write_network_csv`, else from the data maxima.
    """
    path = Path(path)
    meta = {}
    data_lines = []
    with path.open(encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            if line.startswith(META_PREFIX):
                meta.update(_parse_meta(line))
                continue
            if line.lstrip().startswith("#") or not line.strip():
                continue
            data_lines.append((lineno, line))
    if not data_lines:
        raise DataError("missing header u,v,t,p", path=path)
    header_line, header = data_lines[0]
    reader = csv.DictReader([header] + [ln for _, ln in data_lines[1:]])
    missing = {"u", "v", "t", "p"} - set(reader.fieldnames or [])
    if missing:
        raise DataError(f"header lacks columns {sorted(missing)}", path=path, line=header_line)
    u, v, t, p, linenos = [], [], [], [], []
    for (lineno, _), row in zip(data_lines[1:], reader):
        linenos.append(lineno)
        try:
            u.append(int(row["u"]))
            v.append(int(row["v"]))
            t.append(int(row["t"]))
            p.append(float(row["p"]))
        except (TypeError, ValueError) as exc:
            raise DataError(f"malformed record: {exc}", path=path, line=lineno) from None
        if not 0.0 <= p[-1] <= 1.0:
            raise DataError(f"probability {p[-1]} outside [0, 1]", path=path, line=lineno)
    n = node_count or meta.get("nodes") or (max(max(u), max(v)) + 1 if u else 1)
    T = interval_count or meta.get("intervals") or (max(t) if t else 1)
    for k, (a, b, c) in enumerate(zip(u, v, t)):
        if not (0 <= a < n and 0 <= b < n):
            raise DataError(f"node id out of range ({a}, {b}) for {n} nodes", path=path, line=linenos[k])
        if not 1 <= c <= T:
            raise DataError(f"interval {c} out of range [1, {T}]", path=path, line=linenos[k])
        if a == b:
            raise DataError(f"self-loop on node {a}", path=path, line=linenos[k])
    return from_arrays(n, T, u, v, t, p, validate=False)
