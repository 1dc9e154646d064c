"""Temporal Independent Cascade simulation with sentinel (RSM) and susceptible (ESM) node selection."""

from .cascade import (
    CascadeSample,
    CascadeTrace,
    estimate_activation_probabilities,
    exact_activation_probabilities,
    exact_final_distribution,
    run_tic,
    simulate,
)
from .errors import DataError, ResourceBoundError, TCascadeError
from .evaluation import (
    MetricReport,
    binary_success_rate,
    evaluate_solutions,
    expected_spread,
    normalize,
    reverse_spread,
)
from .interventions import (
    VenueMap,
    backward_contribution,
    drop_edges_priority,
    drop_edges_random,
    spread_reduction,
    venue_coverage,
)
from .probability import (
    PRESETS,
    ContactEvent,
    InfectionForceParams,
    accumulated_force,
    assign_from_contacts,
    assign_uniform_random,
    infection_force,
    propagation_probability,
)
from .sampler import Hypergraph, build_hypergraph, degree_of_set, load_hypergraph, save_hypergraph
from .solvers import (
    SolutionSet,
    esm_solve,
    exhaustive_cover_opt,
    max_deg_solve,
    random_solve,
    rsm_solve,
)
from .temporal_graph import TemporalNetwork, Window, build_network, read_network_csv, transpose, write_network_csv

__version__ = "0.1.0"
