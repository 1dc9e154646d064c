"""Synthetic daily trajectories over points of interest.

Per individual and day: a random start time, start POI and target length; each
next stop is reached after the current dwell plus a distance-based travel time
and is drawn from the POIs that are open for the whole stay, belong to a
different category than the current stop and lie within reach. The trajectory
stops early when no candidate remains.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .colocation import DAY, Visit
from .loaders import PoiRecord

EARTH_RADIUS_M = 6_371_000.0


def haversine_m(lat1, lon1, lat2, lon2):
    """Great-circle distance in metres (vectorizes over numpy arrays)."""
    p1, p2 = np.radians(lat1), np.radians(lat2)
    dphi = p2 - p1
    dlmb = np.radians(lon2) - np.radians(lon1)
    a = np.sin(dphi / 2) ** 2 + np.cos(p1) * np.cos(p2) * np.sin(dlmb / 2) ** 2
    return 2 * EARTH_RADIUS_M * np.arcsin(np.sqrt(np.clip(a, 0.0, 1.0)))


def generate_trajectories(pois: Sequence[PoiRecord], n_individuals: int, n_days: int, rng, *,
                          speed_kmh: float = 5.0, speed_jitter: float = 0.25, max_length: int = 6,
                          start_minutes: tuple[int, int] = (6 * 60, 14 * 60),
                          max_distance_km: float = 5.0, distinct_category: bool = True) -> list[Visit]:
    """Visits for ``n_individuals`` over ``n_days`` days (day 0 is a Monday).

    Timestamps are seconds since midnight of day 0. Travel speed for each leg is
    ``speed_kmh`` times a factor drawn uniformly from ``1 +- speed_jitter``.
    With ``distinct_category`` consecutive stops never share a category.
    """
    if not pois:
        raise ValueError("need at least one POI")
    rng = np.random.default_rng(rng)
    lat = np.array([p.lat for p in pois])
    lon = np.array([p.lon for p in pois])
    dist = haversine_m(lat[:, None], lon[:, None], lat[None, :], lon[None, :])
    cats = np.array([p.category for p in pois], dtype=object)
    dwell_s = np.array([math.ceil(p.dwell_min * 60) for p in pois], dtype=np.int64)

    # per weekday: (open, close) in seconds, closed days as empty range
    open_s = np.zeros((7, len(pois)), dtype=np.int64)
    close_s = np.zeros((7, len(pois)), dtype=np.int64)
    for k, p in enumerate(pois):
        for wd, h in enumerate(p.hours):
            if h is not None:
                open_s[wd, k], close_s[wd, k] = h[0] * 60, h[1] * 60

    visits: list[Visit] = []
    children = rng.spawn(n_individuals)
    for person, prng in enumerate(children):
        for day in range(n_days):
            wd = day % 7
            base = day * DAY
            start = int(prng.integers(start_minutes[0], start_minutes[1] + 1)) * 60
            fits = (open_s[wd] <= start) & (start + dwell_s <= close_s[wd])
            first = np.flatnonzero(fits)
            if first.size == 0:
                continue
            cur = int(prng.choice(first))
            length = int(prng.integers(1, max_length + 1))
            arrive = start
            visits.append(Visit(person, pois[cur].poi, base + arrive, base + arrive + int(dwell_s[cur])))
            for _ in range(length - 1):
                depart = arrive + int(dwell_s[cur])
                speed = speed_kmh * 1000 / 3600 * prng.uniform(1 - speed_jitter, 1 + speed_jitter)
                travel = np.ceil(dist[cur] / speed).astype(np.int64)
                reach = depart + travel
                ok = ((np.arange(len(pois)) != cur)
                      & ((cats != cats[cur]) if distinct_category else True)
                      & (dist[cur] <= max_distance_km * 1000)
                      & (open_s[wd] <= reach)
                      & (reach + dwell_s <= close_s[wd]))
                cand = np.flatnonzero(ok)
                if cand.size == 0:
                    break  # truncated
                nxt = int(prng.choice(cand))
                arrive = int(reach[nxt])
                cur = nxt
                visits.append(Visit(person, pois[cur].poi, base + arrive, base + arrive + int(dwell_s[cur])))
    return visits
