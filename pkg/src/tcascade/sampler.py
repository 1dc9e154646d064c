"""Hypergraph of random reachable sets.

Each net is the final active set of one T-IC process started from one uniformly
random seed on the network as given (no transposition). The first pin of every
net is its seed.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .cascade import simulate
from .errors import DataError
from .temporal_graph import TemporalNetwork

DEFAULT_NETS = 20000
CACHE_MAGIC = b"TICHYPG1"
_HEADER = struct.Struct("<8sIQ")  # magic, node_count, n_nets


@dataclass(frozen=True, eq=False)
class Hypergraph:
    node_count: int
    net_offsets: np.ndarray  # int64, n_nets + 1
    net_pins: np.ndarray  # int32, seed first within each net
    node_offsets: np.ndarray  # int64, node_count + 1 (incidence CSR)
    node_nets: np.ndarray  # int64 net ids, ascending per node

    @classmethod
    def from_nets(cls, node_count: int, net_offsets, net_pins) -> "Hypergraph":
        """Build incidence lists once all nets exist."""
        net_offsets = np.asarray(net_offsets, dtype=np.int64)
        net_pins = np.asarray(net_pins, dtype=np.int32)
        if len(net_pins) and (net_pins.min() < 0 or net_pins.max() >= node_count):
            raise ValueError("pin outside node range")
        n_nets = len(net_offsets) - 1
        net_of_pin = np.repeat(np.arange(n_nets, dtype=np.int64), np.diff(net_offsets))
        order = np.argsort(net_pins, kind="stable")
        counts = np.bincount(net_pins, minlength=node_count)
        node_offsets = np.zeros(node_count + 1, dtype=np.int64)
        np.cumsum(counts, out=node_offsets[1:])
        return cls(int(node_count), net_offsets, net_pins, node_offsets, net_of_pin[order])

    @classmethod
    def from_sets(cls, node_count: int, nets: Iterable[Iterable[int]]) -> "Hypergraph":
        """Convenience constructor from explicit pin collections (first element treated as seed)."""
        pins, offsets = [], [0]
        for net in nets:
            members = list(dict.fromkeys(int(x) for x in net))
            pins.extend(members)
            offsets.append(len(pins))
        return cls.from_nets(node_count, offsets, np.asarray(pins, dtype=np.int32))

    @property
    def n_nets(self) -> int:
        return len(self.net_offsets) - 1

    def pins(self, k: int) -> np.ndarray:
        return self.net_pins[self.net_offsets[k]:self.net_offsets[k + 1]]

    def seed_of(self, k: int) -> int:
        return int(self.net_pins[self.net_offsets[k]])

    def seeds(self) -> np.ndarray:
        return self.net_pins[self.net_offsets[:-1]]

    def incident_nets(self, v: int) -> np.ndarray:
        return self.node_nets[self.node_offsets[v]:self.node_offsets[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.node_offsets)

    def covered_mask(self, nodes: Iterable[int]) -> np.ndarray:
        covered = np.zeros(self.n_nets, dtype=bool)
        for v in nodes:
            v = int(v)
            if not 0 <= v < self.node_count:
                raise IndexError(f"node id {v} out of range [0, {self.node_count})")
            covered[self.incident_nets(v)] = True
        return covered

    def degree_of_set(self, nodes: Iterable[int]) -> int:
        """Number of nets sharing at least one pin with ``nodes``."""
        return int(self.covered_mask(nodes).sum())

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.node_count == other.node_count
                and np.array_equal(self.net_offsets, other.net_offsets)
                and np.array_equal(self.net_pins, other.net_pins))

    __hash__ = None

    def __repr__(self):
        return f"Hypergraph(node_count={self.node_count}, n_nets={self.n_nets}, pins={len(self.net_pins)})"


def build_hypergraph(net: TemporalNetwork, window=None, n_nets: int = DEFAULT_NETS, seed: int = 0, *,
                     workers: int | None = None) -> Hypergraph:
    if n_nets < 1:
        raise ValueError("n_nets must be >= 1")
    sample = simulate(net, window, n_nets, seed, stream="sample", workers=workers)
    return Hypergraph.from_nets(net.node_count, sample.offsets, sample.pins)


def degree_of_set(h: Hypergraph, nodes: Iterable[int]) -> int:
    return h.degree_of_set(nodes)


# -- binary cache -------------------------------------------------------------

def save_hypergraph(h: Hypergraph, path) -> None:
    """Write ``magic, node_count:u32, n_nets:u64`` then per net ``len:u32, pins:u32[len]`` (little endian)."""
    sizes = np.diff(h.net_offsets).astype("<u4")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(CACHE_MAGIC, h.node_count, h.n_nets))
        # interleave lengths and pins in a single buffer
        out = np.empty(h.n_nets + len(h.net_pins), dtype="<u4")
        starts = h.net_offsets[:-1] + np.arange(h.n_nets)
        out[starts] = sizes
        mask = np.ones(len(out), dtype=bool)
        mask[starts] = False
        out[mask] = h.net_pins.astype("<u4")
        fh.write(out.tobytes())


def load_hypergraph(path) -> Hypergraph:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise DataError("truncated hypergraph cache", path=path)
    magic, node_count, n_nets = _HEADER.unpack_from(raw)
    if magic != CACHE_MAGIC:
        raise DataError(f"bad magic {magic!r}", path=path)
    body = raw[_HEADER.size:]
    if len(body) % 4:
        raise DataError("hypergraph body not a whole number of 32-bit words", path=path)
    words = np.frombuffer(body, dtype="<u4")
    offsets = np.zeros(n_nets + 1, dtype=np.int64)
    starts = np.empty(n_nets, dtype=np.int64)
    at = 0
    for k in range(n_nets):  # walk the length prefixes; pins are sliced out afterwards
        if at >= len(words):
            raise DataError(f"cache ends inside net {k}", path=path)
        starts[k] = at + 1
        size = int(words[at])
        offsets[k + 1] = offsets[k] + size
        at += size + 1
    if at != len(words):
        raise DataError("trailing or missing data in hypergraph cache", path=path)
    mask = np.zeros(len(words), dtype=bool)
    if n_nets:
        idx = np.repeat(starts - offsets[:-1], np.diff(offsets)) + np.arange(offsets[-1])
        mask[idx] = True
    pins = words[mask].astype(np.int32)
    if len(pins) and pins.max() >= node_count:
        raise DataError("pin id exceeds node count", path=path)
    return Hypergraph.from_nets(node_count, offsets, pins)
