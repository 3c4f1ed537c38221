"""Slot-synchronous simulator for anonymous beeping networks."""

from ._core import (
    Graph,
    RunReport,
    algorithms,
    check_colouring,
    check_degrees,
    check_mis,
    check_palette,
    check_two_hop_colouring,
    check_two_hop_mis,
    choose_k,
    colouring_measure,
    colouring_potential_f,
    complete_graph,
    default_max_slots,
    derive_seed,
    empty_graph,
    erdos_renyi_graph,
    load_graph,
    mis_survival_bound,
    missrate,
    missrate_false_positives,
    parse_graph,
    path_graph,
    ring_graph,
    simulate,
    star_graph,
    transpile_failure_bound,
    wheel_graph,
    wheel_survival,
)

__all__ = [
    "Graph",
    "RunReport",
    "algorithms",
    "check_colouring",
    "check_degrees",
    "check_mis",
    "check_palette",
    "check_two_hop_colouring",
    "check_two_hop_mis",
    "choose_k",
    "colouring_measure",
    "colouring_potential_f",
    "complete_graph",
    "default_max_slots",
    "derive_seed",
    "empty_graph",
    "erdos_renyi_graph",
    "load_graph",
    "mis_survival_bound",
    "missrate",
    "missrate_false_positives",
    "parse_graph",
    "path_graph",
    "ring_graph",
    "simulate",
    "star_graph",
    "transpile_failure_bound",
    "wheel_graph",
    "wheel_survival",
]
