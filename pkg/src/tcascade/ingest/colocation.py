"""Contact networks from co-location: same venue same day, or same place same time slot."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from ..interventions import VenueMap
from ..probability import ContactEvent
from .loaders import CheckinRecord, NodeIndex

DAY = 86400


@dataclass
class Colocation:
    """Contacts derived from co-location.

    ``events`` holds one event per unordered pair and (venue, slot) with ``m``
    set to the number of people present; ``records`` the bidirectional
    ``(u, v, t)`` edges; ``visits`` the ``(node, venue, t)`` presences.
    """

    index: NodeIndex
    interval_count: int
    events: list[ContactEvent] = field(default_factory=list)
    records: list[tuple[int, int, int]] = field(default_factory=list)
    venue_map: VenueMap = field(default_factory=VenueMap)
    visits: list[tuple[int, str, int]] = field(default_factory=list)


def _pairs_into(out: Colocation, group: Sequence[int], venue: str, t: int):
    m = len(group)
    for a, b in combinations(group, 2):
        out.events.append(ContactEvent(a, b, t, None, m))
        for u, v in ((a, b), (b, a)):
            out.records.append((u, v, t))
            out.venue_map.record_venue.setdefault((u, v, t), venue)


def build_colocation_daily(checkins: Iterable[CheckinRecord], *, start_day: int | None = None,
                           n_days: int | None = None, day_seconds: int = DAY) -> Colocation:
    """Connect, in both directions, every pair of users seen at one venue on one day.

    Interval ``t`` is the day index counted from ``start_day`` (an epoch day
    number; default the first day present), starting at 1. ``n_days`` truncates
    the span.
    """
    checkins = list(checkins)
    if not checkins:
        raise ValueError("no check-ins")
    first = min(c.ts // day_seconds for c in checkins) if start_day is None else int(start_day)
    kept = []
    for c in checkins:
        t = c.ts // day_seconds - first + 1
        if t >= 1 and (n_days is None or t <= n_days):
            kept.append((c, t))
    index = NodeIndex(c.user for c, _ in kept)
    span = n_days if n_days is not None else max((t for _, t in kept), default=1)
    out = Colocation(index, span)
    groups = defaultdict(set)
    for c, t in kept:
        groups[(c.venue, t)].add(index[c.user])
        if c.category:
            out.venue_map.category.setdefault(c.venue, c.category)
    for (venue, t), users in sorted(groups.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        out.venue_map.visits[venue] = out.venue_map.visits.get(venue, 0) + len(users)
        out.visits.extend((u, venue, t) for u in sorted(users))
        _pairs_into(out, sorted(users), venue, t)
    return out


@dataclass(frozen=True)
class Visit:
    person: int
    poi: str
    arrive: int  # seconds from the synthetic epoch
    depart: int


def build_colocation_slotted(visits: Iterable[Visit], slot_minutes: int = 5, *, interval_seconds: int = DAY,
                             categories: dict[str, str] | None = None) -> Colocation:
    """Connect people present at the same place during the same time slot.

    A visit occupies slots ``arrive // slot`` through ``(depart - 1) // slot``.
    Each (place, slot) with ``m >= 2`` people yields one event per pair carrying
    ``m``; the event's interval is the slot's ``interval_seconds`` bucket (1-based).
    """
    if slot_minutes <= 0:
        raise ValueError("slot_minutes must be > 0")
    slot = int(slot_minutes * 60)
    visits = list(visits)
    index = NodeIndex(v.person for v in visits)
    occupancy = defaultdict(set)
    for v in visits:
        if v.depart <= v.arrive:
            continue
        for s in range(v.arrive // slot, (v.depart - 1) // slot + 1):
            occupancy[(v.poi, s)].add(index[v.person])
    span = max((v.arrive // interval_seconds + 1 for v in visits), default=1)
    out = Colocation(index, span)
    if categories:
        out.venue_map.category.update(categories)
    seen_visit = set()
    for v in visits:
        t = v.arrive // interval_seconds + 1
        if (index[v.person], v.poi, t) not in seen_visit:
            seen_visit.add((index[v.person], v.poi, t))
            out.visits.append((index[v.person], v.poi, t))
            out.venue_map.visits[v.poi] = out.venue_map.visits.get(v.poi, 0) + 1
    for (poi, s), people in sorted(occupancy.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if len(people) < 2:
            continue
        t = (s * slot) // interval_seconds + 1
        out.interval_count = max(out.interval_count, t)
        _pairs_into(out, sorted(people), poi, t)
    return out
