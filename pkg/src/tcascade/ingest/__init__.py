"""Data loading, contact-network construction and synthetic generators."""

from .colocation import Colocation, Visit, build_colocation_daily, build_colocation_slotted
from .loaders import (
    CheckinRecord,
    ContactTable,
    EdgeList,
    NodeIndex,
    PoiRecord,
    load_checkins,
    load_contact_distances,
    load_edge_list,
    load_pois,
    load_transitions,
    write_contacts_csv,
)
from .synthetic import erdos_renyi, generate_synthetic_network, late_bloomer
from .trajectories import generate_trajectories, haversine_m

__all__ = [
    "CheckinRecord", "Colocation", "ContactTable", "EdgeList", "NodeIndex", "PoiRecord", "Visit",
    "build_colocation_daily", "build_colocation_slotted", "erdos_renyi", "generate_synthetic_network",
    "generate_trajectories", "haversine_m", "late_bloomer", "load_checkins", "load_contact_distances",
    "load_edge_list", "load_pois", "load_transitions", "write_contacts_csv",
]
