"""Compiled T-IC simulation kernel and random stream derivation.

Every activation attempt draws its uniform from a counter-based hash of
``(simulation key, t, u, v)`` rather than from a sequential generator. The coin
for an attempt therefore does not depend on traversal order or on which other
edges exist, which is what makes common-random-number comparisons sample-wise
exact: dropping records, extending the window or changing the evaluated set
never reshuffles the outcomes of the remaining attempts.
"""

from __future__ import annotations

import os
import zlib
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numba import njit

BLOCK = 2048  # simulations per work unit; fixed so results do not depend on worker count

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_SALT_T = np.uint64(0xD6E8FEB86659FD93)
_SALT_V = np.uint64(0xA0761D6478BD642F)
_SALT_SRC = np.uint64(0xE7037ED1A0B428DB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_INV53 = 1.0 / 9007199254740992.0


def derive_key(seed: int, stream: str) -> int:
    """64-bit base key for a named stream under a master seed."""
    if int(seed) < 0:
        raise ValueError("seed must be a non-negative integer")
    ss = np.random.SeedSequence(int(seed), spawn_key=(zlib.crc32(stream.encode("utf-8")),))
    return int(ss.generate_state(1, np.uint64)[0])


@njit(inline="always")
def _mix(x):
    x = (x ^ (x >> _S30)) * _MIX1
    x = (x ^ (x >> _S27)) * _MIX2
    return x ^ (x >> _S31)


@njit(inline="always")
def _sim_key(base, sim):
    return _mix(base + (np.uint64(sim) + _ONE) * _GOLDEN)


@njit(inline="always")
def _uniform(h):
    return np.float64(h >> _S11) * _INV53


@njit(inline="always")
def _coin(key, t, u, v):
    h = _mix(key ^ (np.uint64(t) * _SALT_T))
    h = _mix(h + (np.uint64(u) + _ONE) * _GOLDEN)
    h = _mix(h ^ ((np.uint64(v) + _ONE) * _SALT_V))
    return _uniform(h)


@njit(cache=True, nogil=True)
def random_source(base, sim, n_nodes):
    s = int(_uniform(_mix(_sim_key(base, sim) ^ _SALT_SRC)) * n_nodes)
    return min(s, n_nodes - 1)


@njit(cache=True, nogil=True)
def simulate_block(indptr, indices, probs, n_nodes, t_lo, t_hi, base, sim_lo, sim_hi,
                   sources, record):
    """Run simulations ``sim_lo..sim_hi-1``.

    ``sources`` empty -> one uniformly random source per simulation, else every
    simulation starts from all of ``sources``. Returns flattened final active
    sets (activation order, sources first) with offsets; when ``record`` is set
    also the activating parent (-1 for sources) and activation interval
    (``t_lo - 1`` for sources) of every pin.
    """
    n_sims = sim_hi - sim_lo
    offsets = np.zeros(n_sims + 1, np.int64)
    cap = max(64, 4 * n_sims)
    pins = np.empty(cap, np.int32)
    rcap = cap if record else 0
    parents = np.empty(rcap, np.int32)
    times = np.empty(rcap, np.int32)

    active = np.zeros(n_nodes, np.bool_)
    order = np.empty(n_nodes, np.int32)
    par = np.empty(n_nodes, np.int32)
    tim = np.empty(n_nodes, np.int32)
    pos = 0
    for s in range(n_sims):
        sim = sim_lo + s
        key = _sim_key(base, sim)
        n_act = 0
        if sources.shape[0] == 0:
            src = random_source(base, sim, n_nodes)
            active[src] = True
            order[0] = src
            par[0] = -1
            tim[0] = t_lo - 1
            n_act = 1
        else:
            for q in range(sources.shape[0]):
                src = sources[q]
                if not active[src]:
                    active[src] = True
                    order[n_act] = src
                    par[n_act] = -1
                    tim[n_act] = t_lo - 1
                    n_act += 1
        for t in range(t_lo, t_hi + 1):
            row0 = (t - 1) * n_nodes
            head = 0
            # the queue starts as every active node; new activations join its tail
            while head < n_act and n_act < n_nodes:
                u = order[head]
                head += 1
                r = row0 + u
                for e in range(indptr[r], indptr[r + 1]):
                    v = indices[e]
                    if active[v]:
                        continue
                    if _coin(key, t, u, v) < probs[e]:
                        active[v] = True
                        order[n_act] = v
                        par[n_act] = u
                        tim[n_act] = t
                        n_act += 1
        if pos + n_act > cap:
            while pos + n_act > cap:
                cap *= 2
            grown = np.empty(cap, np.int32)
            grown[:pos] = pins[:pos]
            pins = grown
            if record:
                g2 = np.empty(cap, np.int32)
                g2[:pos] = parents[:pos]
                parents = g2
                g3 = np.empty(cap, np.int32)
                g3[:pos] = times[:pos]
                times = g3
        for q in range(n_act):
            w = order[q]
            pins[pos + q] = w
            active[w] = False
            if record:
                parents[pos + q] = par[q]
                times[pos + q] = tim[q]
        pos += n_act
        offsets[s + 1] = pos
    if record:
        return pins[:pos].copy(), offsets, parents[:pos].copy(), times[:pos].copy()
    return pins[:pos].copy(), offsets, parents, times


def default_workers() -> int:
    return max(1, os.cpu_count() or 1)


def run_simulations(net, window, n_sims, base_key, sources=None, record=False, workers=None,
                    sim_offset=0):
    """Run ``n_sims`` simulations in fixed-size blocks, optionally on worker threads.

    Output is identical for any worker count.
    """
    n_sims = int(n_sims)
    if n_sims < 1:
        raise ValueError("n_sims must be >= 1")
    src = np.empty(0, np.int64) if sources is None else np.asarray(sources, dtype=np.int64)
    base = np.uint64(base_key)
    blocks = [(lo, min(lo + BLOCK, n_sims)) for lo in range(0, n_sims, BLOCK)]

    def one(b):
        lo, hi = b
        return simulate_block(net.indptr, net.indices, net.probs, net.node_count, window.i, window.j,
                              base, sim_offset + lo, sim_offset + hi, src, record)

    workers = default_workers() if workers is None else max(1, int(workers))
    if workers == 1 or len(blocks) == 1:
        parts = [one(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, blocks))

    pins = np.concatenate([p[0] for p in parts])
    offsets = np.zeros(n_sims + 1, np.int64)
    at = 0
    for p in parts:
        k = len(p[1]) - 1
        offsets[at + 1:at + k + 1] = p[1][1:] + offsets[at]
        at += k
    if record:
        parents = np.concatenate([p[2] for p in parts])
        times = np.concatenate([p[3] for p in parts])
        return pins, offsets, parents, times
    return pins, offsets, None, None
