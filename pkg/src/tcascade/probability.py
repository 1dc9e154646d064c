"""Propagation probabilities from contact observations or uniform sampling.

Force of infection of one contact event::

    a * exp(-d * rho1) + b * exp(-rho2 / m)

where the proximity term needs a distance ``d <= l`` and the density term needs a
co-location count ``m``. The probability at interval ``t`` is
``1 - exp(-sum of forces over intervals (t - t0, t])``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .temporal_graph import TemporalNetwork, from_arrays


@dataclass(frozen=True)
class ContactEvent:
    u: int
    v: int
    t: int
    distance: float | None = None  # metres
    co_located: int | None = None  # people at the venue, m >= 1

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError("contact event needs two distinct nodes")
        if self.distance is None and self.co_located is None:
            raise ValueError("contact event needs a distance or a co-location count")
        if self.distance is not None and not self.distance >= 0:
            raise ValueError(f"negative distance {self.distance}")
        if self.co_located is not None and self.co_located < 1:
            raise ValueError(f"co-location count must be >= 1 (got {self.co_located})")


@dataclass(frozen=True)
class InfectionForceParams:
    a: float = 0.0
    b: float = 0.0
    rho1: float = 0.1
    rho2: float = 0.1
    dist_threshold: float = 5.0
    history_window: int = 1  # t0, in intervals

    def __post_init__(self):
        vals = (self.a, self.b, self.rho1, self.rho2, self.dist_threshold)
        if not all(math.isfinite(x) for x in vals):
            raise ValueError("force parameters must be finite")
        if self.a < 0 or self.b < 0:
            raise ValueError("a and b must be >= 0")
        if self.rho1 <= 0 or self.rho2 <= 0:
            raise ValueError("rho1 and rho2 must be > 0")
        if self.dist_threshold <= 0:
            raise ValueError("distance threshold must be > 0")
        if int(self.history_window) != self.history_window or self.history_window < 1:
            raise ValueError("history window t0 must be an integer >= 1")

    def with_overrides(self, **kw) -> "InfectionForceParams":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


PRESETS = {
    # co-location density only (check-in / trajectory networks)
    "density": InfectionForceParams(a=0.0, b=0.05, rho2=0.1),
    # same, for densely connected networks
    "density-dense": InfectionForceParams(a=0.0, b=0.01, rho2=0.1),
    # proximity only (pairwise distance data)
    "proximity": InfectionForceParams(a=0.05, b=0.0, rho1=0.1, dist_threshold=5.0, history_window=1),
}


def preset(name: str, **overrides) -> InfectionForceParams:
    try:
        base = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    return base.with_overrides(**overrides)


def infection_force(params: InfectionForceParams, event: ContactEvent) -> float:
    force = 0.0
    d = event.distance
    if d is not None and d <= params.dist_threshold:
        force += params.a * math.exp(-d * params.rho1)
    if event.co_located is not None:
        force += params.b * math.exp(-params.rho2 / event.co_located)
    return force


def accumulated_force(params: InfectionForceParams, events: Iterable[ContactEvent], u: int, v: int, t: int,
                      symmetric: bool = True) -> float:
    """Sum of forces of the ``(u, v)`` events with interval in ``(t - t0, t]``."""
    lo = t - params.history_window
    total = 0.0
    for e in events:
        same = (e.u == u and e.v == v) or (symmetric and e.u == v and e.v == u)
        if same and lo < e.t <= t:
            total += infection_force(params, e)
    return total


def propagation_probability(force_sum: float) -> float:
    if force_sum < 0:
        raise ValueError(f"accumulated force must be >= 0 (got {force_sum})")
    return -math.expm1(-force_sum)


def _force_array(params: InfectionForceParams, d: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Vectorized force; NaN marks an absent field."""
    near = ~np.isnan(d) & (d <= params.dist_threshold)
    f = np.where(near, params.a * np.exp(-np.where(near, d, 0.0) * params.rho1), 0.0)
    has_m = ~np.isnan(m)
    f += np.where(has_m, params.b * np.exp(-params.rho2 / np.where(has_m, m, 1.0)), 0.0)
    return f


def assign_from_contacts(params: InfectionForceParams, events: Sequence[ContactEvent], node_count: int,
                         interval_count: int, *, symmetric: bool = True, labels=None) -> TemporalNetwork:
    """Network whose ``p^t(u, v)`` comes from the accumulated force of the pair's events.

    An event at interval ``s`` contributes to every ``t`` with ``s <= t < s + t0``.
    With ``symmetric`` (the default) each event counts for both directions.
    """
    if not events:
        return from_arrays(node_count, interval_count, [], [], [], [], labels=labels)
    u = np.array([e.u for e in events], dtype=np.int64)
    v = np.array([e.v for e in events], dtype=np.int64)
    t = np.array([e.t for e in events], dtype=np.int64)
    d = np.array([np.nan if e.distance is None else e.distance for e in events], dtype=float)
    m = np.array([np.nan if e.co_located is None else e.co_located for e in events], dtype=float)
    if min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= node_count:
        raise ValueError(f"event node id outside [0, {node_count})")
    if t.min() < 1 or t.max() > interval_count:
        raise ValueError(f"event interval outside [1, {interval_count}]")
    return _assign_arrays(params, u, v, t, d, m, node_count, interval_count, symmetric, labels)


def _assign_arrays(params, u, v, t, d, m, node_count, interval_count, symmetric, labels=None):
    f = _force_array(params, d, m)
    if symmetric:
        # accumulate per unordered pair, mirror afterwards: both directions get identical sums
        u, v = np.minimum(u, v), np.maximum(u, v)
    t0 = int(params.history_window)
    # spread each event over the intervals whose history window contains it
    shifts = np.arange(t0)
    uu = np.repeat(u, t0)
    vv = np.repeat(v, t0)
    tt = (t[:, None] + shifts[None, :]).ravel()
    ff = np.repeat(f, t0)
    keep = (tt <= interval_count) & (ff > 0)
    uu, vv, tt, ff = uu[keep], vv[keep], tt[keep], ff[keep]
    if uu.size == 0:
        return from_arrays(node_count, interval_count, [], [], [], [], labels=labels)
    key = np.stack([tt, uu, vv], axis=1)
    uniq, inv = np.unique(key, axis=0, return_inverse=True)
    sums = np.bincount(inv.ravel(), weights=ff, minlength=len(uniq))
    p = -np.expm1(-sums)
    t_out, u_out, v_out = uniq[:, 0], uniq[:, 1], uniq[:, 2]
    if symmetric:
        t_out = np.concatenate([t_out, t_out])
        u_out, v_out = np.concatenate([u_out, v_out]), np.concatenate([v_out, u_out])
        p = np.concatenate([p, p])
    return from_arrays(node_count, interval_count, u_out, v_out, t_out, p, labels=labels)


def assign_uniform_random(edges: Sequence[tuple[int, int]], node_count: int, interval_count: int,
                          p_max: float = 0.3, rng=None, *, labels=None) -> TemporalNetwork:
    """Place each directed edge in one uniform interval with ``p ~ U[0, p_max]``."""
    if not 0 < p_max <= 1:
        raise ValueError(f"p_max must lie in (0, 1] (got {p_max})")
    if rng is None:
        raise ValueError("an explicit rng or seed is required")
    rng = np.random.default_rng(rng)
    arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    t = rng.integers(1, interval_count + 1, size=len(arr))
    p = rng.uniform(0.0, p_max, size=len(arr))
    return from_arrays(node_count, interval_count, arr[:, 0], arr[:, 1], t, p, labels=labels)
