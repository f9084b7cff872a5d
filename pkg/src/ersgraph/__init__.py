"""Effective resistance spaces: recovery, reduction, limit graphs and random walks."""

__version__ = "0.1.0"

from .errors import ErsError  # noqa: E402
from .ers import effective_resistance, potential, recover_graph  # noqa: E402
from .families import builtin_family, builtin_fixture, family_metric  # noqa: E402
from .graph import WeightedGraph, build_graph, geodesic_metric  # noqa: E402
from .limits import ExhaustionPlan, exhaustion_traces, limit_graph_estimate  # noqa: E402
from .metric import MetricSpace, defect_system, validate_metric  # noqa: E402
from .reduction import reduce_graph, star_mesh, trace_to_subset  # noqa: E402
from .walks import (  # noqa: E402
    exact_expected_visits,
    exact_return_vs_hit,
    mc_resistance,
    phi_law_check,
    simulate_walk,
)

__all__ = [
    "ErsError", "ExhaustionPlan", "MetricSpace", "WeightedGraph", "build_graph",
    "builtin_family", "builtin_fixture", "defect_system", "effective_resistance",
    "exact_expected_visits", "exact_return_vs_hit", "exhaustion_traces", "family_metric",
    "geodesic_metric", "limit_graph_estimate", "mc_resistance", "phi_law_check",
    "potential", "recover_graph", "reduce_graph", "simulate_walk", "star_mesh",
    "trace_to_subset", "validate_metric",
]
