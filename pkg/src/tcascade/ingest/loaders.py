"""CSV loaders for external data. All files need a header row; column order is free."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from ..errors import DataError
from ..probability import ContactEvent
from ..temporal_graph import TemporalNetwork, from_arrays


class NodeIndex:
    """Bijection between external ids and dense ids ``0..n-1``.

    Ids are ordered numerically when they are all integers, else as strings, so
    already-dense integer ids map onto themselves.
    """

    def __init__(self, ids: Iterable):
        uniq = {str(x) for x in ids}
        try:
            ordered = sorted(uniq, key=int)
        except ValueError:
            ordered = sorted(uniq)
        self.labels: tuple[str, ...] = tuple(ordered)
        self._dense = {lab: k for k, lab in enumerate(self.labels)}

    def __len__(self):
        return len(self.labels)

    def __getitem__(self, external) -> int:
        return self._dense[str(external)]

    def __contains__(self, external):
        return str(external) in self._dense

    def label(self, dense: int) -> str:
        return self.labels[dense]


def read_rows(path, required: Iterable[str]) -> Iterator[tuple[int, dict]]:
    """Yield ``(line number, row)`` from a headed CSV, skipping ``#`` comments and blank lines."""
    path = Path(path)
    with path.open(encoding="utf-8", newline="") as fh:
        numbered = ((n, line) for n, line in enumerate(fh, start=1)
                    if line.strip() and not line.lstrip().startswith("#"))
        try:
            header_no, header = next(numbered)
        except StopIteration:
            raise DataError("empty file (header required)", path=path) from None
        fields = [c.strip() for c in next(csv.reader([header]))]
        missing = [c for c in required if c not in fields]
        if missing:
            raise DataError(f"header lacks columns {missing}", path=path, line=header_no)
        for lineno, line in numbered:
            values = next(csv.reader([line]))
            if len(values) != len(fields):
                raise DataError(f"expected {len(fields)} fields, got {len(values)}", path=path, line=lineno)
            yield lineno, {k: v.strip() for k, v in zip(fields, values)}


def _num(row, key, kind, path, lineno, optional=False):
    raw = row.get(key, "")
    if raw == "":
        if optional:
            return None
        raise DataError(f"missing value for {key!r}", path=path, line=lineno)
    try:
        val = kind(raw)
    except ValueError:
        raise DataError(f"bad {key!r} value {raw!r}", path=path, line=lineno) from None
    if kind is float and not math.isfinite(val):
        raise DataError(f"non-finite {key!r} value {raw!r}", path=path, line=lineno)
    return val


# -- check-ins ---------------------------------------------------------------

@dataclass(frozen=True)
class CheckinRecord:
    user: str
    venue: str
    ts: int  # epoch seconds
    category: str | None = None


def load_checkins(path) -> list[CheckinRecord]:
    """Columns ``user,venue,ts`` plus optional ``category``."""
    out = []
    for lineno, row in read_rows(path, ("user", "venue", "ts")):
        ts = _num(row, "ts", int, path, lineno)
        if ts < 0:
            raise DataError(f"negative timestamp {ts}", path=path, line=lineno)
        if not row["user"] or not row["venue"]:
            raise DataError("empty user or venue", path=path, line=lineno)
        out.append(CheckinRecord(row["user"], row["venue"], ts, row.get("category") or None))
    return out


# -- contacts ------------------------------------------------------------------

@dataclass(frozen=True)
class ContactTable:
    events: list[ContactEvent]
    index: NodeIndex
    interval_count: int


def load_contact_distances(path) -> ContactTable:
    """Columns ``u,v,t`` plus ``d`` (metres) and/or ``m``; either may be empty or absent.

    One event per row. Negative distances, self-contacts and rows with neither
    ``d`` nor ``m`` are rejected.
    """
    raw = []
    for lineno, row in read_rows(path, ("u", "v", "t")):
        t = _num(row, "t", int, path, lineno)
        d = _num(row, "d", float, path, lineno, optional=True)
        m = _num(row, "m", int, path, lineno, optional=True)
        if t < 1:
            raise DataError(f"interval {t} must be >= 1", path=path, line=lineno)
        if d is not None and d < 0:
            raise DataError(f"negative distance {d}", path=path, line=lineno)
        if m is not None and m < 1:
            raise DataError(f"co-location count {m} must be >= 1", path=path, line=lineno)
        if d is None and m is None:
            raise DataError("row has neither distance nor co-location count", path=path, line=lineno)
        if row["u"] == row["v"]:
            raise DataError(f"self-contact on {row['u']!r}", path=path, line=lineno)
        raw.append((row["u"], row["v"], t, d, m))
    index = NodeIndex([r[0] for r in raw] + [r[1] for r in raw])
    events = [ContactEvent(index[u], index[v], t, d, m) for u, v, t, d, m in raw]
    return ContactTable(events, index, max((e.t for e in events), default=1))


def write_contacts_csv(events: Iterable[ContactEvent], path, labels=None) -> None:
    lines = ["u,v,t,d,m"]
    for e in events:
        u = labels[e.u] if labels else e.u
        v = labels[e.v] if labels else e.v
        d = "" if e.distance is None else repr(float(e.distance))
        m = "" if e.co_located is None else str(e.co_located)
        lines.append(f"{u},{v},{e.t},{d},{m}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


# -- transitions / edge lists ----------------------------------------------------

def load_transitions(path, interval_count: int | None = None) -> TemporalNetwork:
    """Columns ``src,dst,t,p``; probabilities are stored as given (zero rows dropped)."""
    raw = []
    for lineno, row in read_rows(path, ("src", "dst", "t", "p")):
        t = _num(row, "t", int, path, lineno)
        p = _num(row, "p", float, path, lineno)
        if not 0.0 <= p <= 1.0:
            raise DataError(f"probability {p} outside [0, 1]", path=path, line=lineno)
        if t < 1 or (interval_count is not None and t > interval_count):
            raise DataError(f"interval {t} out of range", path=path, line=lineno)
        if row["src"] == row["dst"]:
            raise DataError(f"self-transition on {row['src']!r}", path=path, line=lineno)
        raw.append((row["src"], row["dst"], t, p))
    index = NodeIndex([r[0] for r in raw] + [r[1] for r in raw])
    if not raw:
        raise DataError("no transition rows", path=path)
    u = [index[r[0]] for r in raw]
    v = [index[r[1]] for r in raw]
    t = [r[2] for r in raw]
    p = [r[3] for r in raw]
    T = interval_count or max(t)
    return from_arrays(len(index), T, u, v, t, p, labels=index.labels)


@dataclass(frozen=True)
class EdgeList:
    pairs: np.ndarray  # (E, 2) dense ids, deduplicated, first-seen order
    index: NodeIndex

    @property
    def node_count(self) -> int:
        return len(self.index)


def load_edge_list(path) -> EdgeList:
    """Columns ``u,v``. Repeated pairs are kept once; self-loops are rejected."""
    raw = []
    seen = set()
    for lineno, row in read_rows(path, ("u", "v")):
        u, v = row["u"], row["v"]
        if not u or not v:
            raise DataError("empty node id", path=path, line=lineno)
        if u == v:
            raise DataError(f"self-loop on {u!r}", path=path, line=lineno)
        if (u, v) in seen:
            continue
        seen.add((u, v))
        raw.append((u, v))
    index = NodeIndex([a for a, _ in raw] + [b for _, b in raw])
    pairs = np.array([(index[a], index[b]) for a, b in raw], dtype=np.int64).reshape(-1, 2)
    return EdgeList(pairs, index)


# -- POIs ------------------------------------------------------------------------

@dataclass(frozen=True)
class PoiRecord:
    poi: str
    category: str
    hours: tuple[tuple[int, int] | None, ...]  # per weekday (Mon..Sun) minutes since midnight; None = closed
    dwell_min: float
    lat: float
    lon: float

    def __post_init__(self):
        if len(self.hours) != 7:
            raise ValueError("hours needs one entry per weekday")
        for h in self.hours:
            if h is not None and not h[0] < h[1]:
                raise ValueError(f"opening start must precede end: {h}")
        if not self.dwell_min > 0:
            raise ValueError("dwell time must be > 0")

    def is_open(self, weekday: int, minute: float) -> bool:
        h = self.hours[weekday % 7]
        return h is not None and h[0] <= minute < h[1]


def _hours_field(raw: str, path, lineno) -> list[int | None]:
    parts = raw.split(";") if raw else [""]
    if len(parts) not in (1, 7):
        raise DataError("opening times need 1 or 7 ';'-separated values", path=path, line=lineno)
    vals = []
    for p in parts:
        p = p.strip()
        if p == "":
            vals.append(None)
            continue
        try:
            vals.append(int(p))
        except ValueError:
            raise DataError(f"bad opening time {p!r}", path=path, line=lineno) from None
    return vals * 7 if len(vals) == 1 else vals


def load_pois(path) -> list[PoiRecord]:
    """Columns ``poi,category,open_min,close_min,dwell_min,lat,lon``.

    ``open_min`` / ``close_min`` hold one value for every weekday or seven
    ``;``-separated values (Monday first); an empty value marks a closed day.
    """
    out = []
    for lineno, row in read_rows(path, ("poi", "category", "open_min", "close_min", "dwell_min", "lat", "lon")):
        opens = _hours_field(row["open_min"], path, lineno)
        closes = _hours_field(row["close_min"], path, lineno)
        hours = []
        for o, c in zip(opens, closes):
            if o is None or c is None:
                hours.append(None)
            elif not 0 <= o < c <= 24 * 60:
                raise DataError(f"opening interval {o}-{c} invalid", path=path, line=lineno)
            else:
                hours.append((o, c))
        dwell = _num(row, "dwell_min", float, path, lineno)
        lat = _num(row, "lat", float, path, lineno)
        lon = _num(row, "lon", float, path, lineno)
        if dwell <= 0:
            raise DataError("dwell time must be > 0", path=path, line=lineno)
        if not (-90 <= lat <= 90 and -180 <= lon <= 180):
            raise DataError("coordinates out of range", path=path, line=lineno)
        out.append(PoiRecord(row["poi"], row["category"], tuple(hours), dwell, lat, lon))
    return out
