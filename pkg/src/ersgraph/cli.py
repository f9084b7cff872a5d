"""Command-line interface.

Every run prints (or writes with ``--output``) one JSON report that embeds
the full run configuration and the package version.

Exit codes: 0 success or IsErs, 2 NotErs, 3 Indeterminate, 64 unreadable
input or bad usage, 65 input that parses but violates a precondition.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .errors import ErsError, MetricValidationError, ParseError
from .ers import (
    INDETERMINATE,
    IS_ERS,
    effective_resistance,
    graph_to_dict,
    recover_graph,
)
from .families import (
    FAMILIES,
    FIXTURES,
    METRIC_FAMILIES,
    builtin_family,
    builtin_fixture,
    family_boundary,
)
from .graph import WeightedGraph, geodesic_metric
from .io import metric_to_dict, read_graph, read_metric, write_json, write_text_atomic
from .limits import ExhaustionPlan, exhaustion_traces, limit_graph_estimate
from .metric import MetricSpace, validate_metric
from .numeric import BACKENDS, DEFAULT_TOLERANCE, RATIONAL, format_scalar
from .reduction import reduce_graph
from .walks import (
    DEFAULT_STEP_CAP,
    exact_expected_visits,
    first_passage_probabilities,
    limit_walk_consistency,
    mc_resistance,
    phi_law_check,
)

EXIT_OK = 0
EXIT_NOT_ERS = 2
EXIT_INDETERMINATE = 3
EXIT_PARSE = 64
EXIT_INVALID = 65

BACKEND_ENV = "ERSGRAPH_BACKEND"
# truncations of these families stand for transient graphs, so walks are
# killed at the cut unless told otherwise
TRANSIENT_FAMILIES = ("transient", "two-ray", "two-ray-bridge")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


# --- input specs ------------------------------------------------------------


def _split_family(source: str):
    if source.startswith("t") and source[1:].isdigit():
        return "transient", int(source[1:])
    if ":" in source:
        name, _, n = source.partition(":")
        if name in FAMILIES:
            try:
                return name, int(n)
            except ValueError:
                raise ParseError(f"bad family size in {source!r}") from None
    return None


def load_graph(source: str, backend: str):
    """Graph from a JSON file, a fixture name, ``family:n`` or ``t<depth>``.

    Returns the graph and its default absorbing set.
    """
    fam = _split_family(source)
    if fam is not None:
        name, n = fam
        if name in METRIC_FAMILIES:
            raise ParseError(f"{name} is a metric family, not a graph")
        absorb = family_boundary(name, n) if name in TRANSIENT_FAMILIES else []
        return builtin_family(name, n, backend), absorb
    if source in FIXTURES and not os.path.exists(source):
        obj = builtin_fixture(source, backend)
        if not isinstance(obj, WeightedGraph):
            raise ParseError(f"fixture {source!r} is a metric, not a graph")
        return obj, []
    return read_graph(source, backend), []


def load_metric(source: str, backend: str, tolerance: float) -> MetricSpace:
    """Metric from a JSON file, a fixture, ``discrete:n``/``star:n``, or the
    effective resistance of ``family:n``."""
    fam = _split_family(source)
    if fam is not None:
        name, n = fam
        obj = builtin_family(name, n, backend)
    elif source in FIXTURES and not os.path.exists(source):
        obj = builtin_fixture(source, backend)
    else:
        return read_metric(source, backend)
    if isinstance(obj, WeightedGraph):
        obj = effective_resistance(obj, tolerance)
    return validate_metric(obj.labels, obj.d, tolerance=tolerance)


def parse_sizes(text: str) -> list:
    """``"2..12"``, ``"2..12:2"`` or ``"2,4,8"``."""
    try:
        if ".." in text:
            rng, _, step = text.partition(":")
            lo, _, hi = rng.partition("..")
            return list(range(int(lo), int(hi) + 1, int(step) if step else 1))
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise ParseError(f"bad size schedule {text!r}") from None


def _labels_arg(text):
    return [v for v in text.split(",") if v] if text else []


def _absorbing(args, default):
    if args.absorb == "auto":
        return default
    if args.absorb == "none":
        return []
    return _labels_arg(args.absorb)


# --- subcommands -----------------------------------------------------------------


def cmd_check_ers(args):
    m = load_metric(args.metric, args.backend, args.tolerance)
    verdict = recover_graph(m, args.tolerance, snap_zero=args.snap_zero)
    if args.write_graph and verdict.graph is not None:
        write_json(args.write_graph, graph_to_dict(verdict.graph))
    code = {IS_ERS: EXIT_OK, INDETERMINATE: EXIT_INDETERMINATE}.get(verdict.outcome,
                                                                   EXIT_NOT_ERS)
    return verdict.to_dict(), code


def _matrix_report(m: MetricSpace):
    return {"labels": list(m.labels),
            "matrix": [[format_scalar(v) for v in row] for row in m.d]}


def cmd_effres(args):
    g, _ = load_graph(args.graph, args.backend)
    return _matrix_report(effective_resistance(g, args.tolerance)), EXIT_OK


def cmd_geodesic(args):
    g, _ = load_graph(args.graph, args.backend)
    return _matrix_report(geodesic_metric(g)), EXIT_OK


def cmd_reduce(args):
    g, _ = load_graph(args.graph, args.backend)
    order = _labels_arg(args.order) or None
    trace = reduce_graph(g, _labels_arg(args.keep), order, args.tolerance)
    steps = [{"removed": x, "graph": graph_to_dict(h),
              "strength_deltas": {k: format_scalar(v) for k, v in d.items()}}
             for x, h, d in zip(trace.order, trace.graphs[1:], trace.strength_deltas)]
    return {"order": trace.order, "final": graph_to_dict(trace.final), "steps": steps,
            "residual_bound": trace.residual_bound}, EXIT_OK


def cmd_limit(args):
    plan = ExhaustionPlan(args.family, parse_sizes(args.sizes), backend=args.backend)
    traces = exhaustion_traces(plan, args.tolerance)
    report = limit_graph_estimate(traces, gap_epsilon=args.epsilon,
                                  divergence_cap=args.divergence_cap)
    if args.csv:
        write_text_atomic(args.csv, report.trajectories_csv())
    return report.to_dict(), EXIT_OK


def cmd_walk_exact(args):
    g, default = load_graph(args.graph, args.backend)
    absorb = _absorbing(args, default)
    h = first_passage_probabilities(g, args.x, args.y, absorb, args.tolerance)
    out = {"x": args.x, "y": args.y, "absorbing": list(h.absorbing),
           "p_return_before_hit": format_scalar(h.return_first),
           "p_hit_before_return": format_scalar(h.hit_first),
           "p_escape": format_scalar(h.escape),
           "p_hit_or_escape": format_scalar(h.hit_or_escape),
           "expected_visits": format_scalar(exact_expected_visits(g, args.x, args.y, absorb,
                                                                  args.tolerance)),
           "strength": format_scalar(g.strength(args.x))}
    out["resistance"] = format_scalar(effective_resistance(g, args.tolerance)
                                      .distance(args.x, args.y))
    return out, EXIT_OK


def cmd_walk_mc(args):
    g, default = load_graph(args.graph, args.backend)
    absorb = _absorbing(args, default)
    est = mc_resistance(g, args.x, args.y, args.walks, args.cap, args.seed, args.workers,
                        absorb, args.tolerance)
    exact = exact_expected_visits(g, args.x, args.y, absorb, args.tolerance) / g.strength(args.x)
    out = est.to_dict()
    out.update({"x": args.x, "y": args.y, "absorbing": absorb,
                "exact": format_scalar(exact)})
    return out, EXIT_OK


def cmd_walk_law(args):
    g, _ = load_graph(args.graph, args.backend)
    rep = phi_law_check(g, args.x, args.y, args.samples, args.seed, args.alpha, args.cap,
                        args.workers, args.tolerance)
    return rep.to_dict(), EXIT_OK


def cmd_walk_limit_check(args):
    rep = limit_walk_consistency(args.family, parse_sizes(args.sizes), args.x, args.y,
                                 args.samples, args.seed, args.assert_recurrent, args.cap,
                                 args.workers, tolerance=args.tolerance)
    return rep.to_dict(), EXIT_OK


def cmd_generate(args):
    if args.family in FIXTURES:
        obj = builtin_fixture(args.family, args.backend)
    else:
        if args.n is None:
            raise ParseError(f"{args.family} needs a size")
        obj = builtin_family(args.family, args.n, args.backend)
    if isinstance(obj, WeightedGraph):
        return graph_to_dict(obj), EXIT_OK
    return metric_to_dict(obj), EXIT_OK


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    env_backend = os.environ.get(BACKEND_ENV, RATIONAL)
    p = _Parser(prog="ersgraph",
                description="Effective resistance metrics, graph recovery, network "
                            "reduction, limit graphs and random walks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--backend", choices=BACKENDS,
                   default=env_backend if env_backend in BACKENDS else RATIONAL,
                   help=f"scalar backend (default from ${BACKEND_ENV}, else rational)")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                   help="float-mode tolerance band")
    p.add_argument("--seed", type=int, default=0, help="master seed for Monte Carlo runs")
    p.add_argument("--workers", type=int, default=1, help="worker processes for Monte Carlo")
    p.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check-ers", help="decide whether a metric is an effective resistance")
    s.add_argument("metric", help="metric JSON file, fixture name, or family:n")
    s.add_argument("--write-graph", help="write the recovered graph to this file")
    s.add_argument("--snap-zero", action="store_true",
                   help="float mode: read weights within the tolerance band as absent edges "
                        "instead of returning indeterminate")
    s.set_defaults(func=cmd_check_ers)

    s = sub.add_parser("effres", help="all-pairs effective resistance of a graph")
    s.add_argument("graph", help="graph JSON file, fixture name, family:n or t<depth>")
    s.set_defaults(func=cmd_effres)

    s = sub.add_parser("geodesic", help="shortest-path metric with edge lengths 1/c")
    s.add_argument("graph")
    s.set_defaults(func=cmd_geodesic)

    s = sub.add_parser("reduce", help="star-mesh reduction onto a vertex subset")
    s.add_argument("graph")
    s.add_argument("--keep", required=True, help="comma-separated vertices to keep")
    s.add_argument("--order", help="comma-separated removal order")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("limit", help="exhaustion and limit-graph diagnostics of a family")
    s.add_argument("family", choices=sorted(FAMILIES))
    s.add_argument("sizes", help="size schedule, e.g. 2..12, 2..30:2 or 2,4,8")
    s.add_argument("--epsilon", type=float, default=0.5,
                   help="gap above which the strength test fails")
    s.add_argument("--divergence-cap", type=float, default=1e6)
    s.add_argument("--csv", help="write trajectories to this CSV file")
    s.set_defaults(func=cmd_limit)

    w = sub.add_parser("walk", help="random-walk representations")
    wsub = w.add_subparsers(dest="walk_command", required=True, parser_class=_Parser)

    def pair(q, graph=True):
        if graph:
            q.add_argument("--graph", required=True,
                           help="graph JSON file, fixture name, family:n or t<depth>")
        q.add_argument("--from", dest="x", required=True)
        q.add_argument("--to", dest="y", required=True)

    def absorb(q):
        q.add_argument("--absorb", default="auto",
                       help="killing vertices: auto (cut of a transient family), none, "
                            "or a comma-separated list")

    q = wsub.add_parser("exact", help="exact hitting probabilities and expected visits")
    pair(q)
    absorb(q)
    q.set_defaults(func=cmd_walk_exact)

    q = wsub.add_parser("mc", help="Monte Carlo estimate of R(x, y)")
    pair(q)
    absorb(q)
    q.add_argument("--walks", type=int, default=10**5)
    q.add_argument("--cap", type=int, default=DEFAULT_STEP_CAP)
    q.set_defaults(func=cmd_walk_mc)

    q = wsub.add_parser("law", help="goodness of fit of the visit count to its geometric law")
    pair(q)
    q.add_argument("--samples", type=int, default=10**5)
    q.add_argument("--alpha", type=float, default=0.01)
    q.add_argument("--cap", type=int, default=DEFAULT_STEP_CAP)
    q.set_defaults(func=cmd_walk_law)

    q = wsub.add_parser("limit-check", help="walk representation on a family's limit graph")
    q.add_argument("--family", required=True, choices=sorted(FAMILIES))
    q.add_argument("--sizes", required=True)
    pair(q, graph=False)
    q.add_argument("--samples", type=int, default=10**4)
    q.add_argument("--cap", type=int, default=DEFAULT_STEP_CAP)
    q.add_argument("--assert-recurrent", action="store_true",
                   help="assert that the limit graph's walk is recurrent")
    q.set_defaults(func=cmd_walk_limit_check)

    s = sub.add_parser("generate", help="write a built-in family instance or fixture")
    s.add_argument("family", choices=sorted(set(FAMILIES) | set(FIXTURES)))
    s.add_argument("n", type=int, nargs="?")
    s.set_defaults(func=cmd_generate)
    return p


def _config(args) -> dict:
    skip = {"func"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(doc, output):
    text = json.dumps(doc, indent=2) + "\n"
    if output:
        write_text_atomic(output, text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _config(args)
    try:
        result, code = args.func(args)
    except ParseError as exc:
        _emit({"error": {"type": "ParseError", "message": str(exc)}}, None)
        return EXIT_PARSE
    except MetricValidationError as exc:
        _emit({"error": {"type": "MetricValidationError", "message": str(exc),
                         "violations": [{"kind": v.kind, "witness": list(v.witness)}
                                        for v in exc.violations]}}, None)
        return EXIT_INVALID
    except (ErsError, ValueError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}}, None)
        return EXIT_INVALID
    if args.command == "generate":
        result["generated_by"] = {"version": __version__, "config": config}
    else:
        result = {"tool": "ersgraph", "version": __version__, "config": config,
                  "result": result}
    _emit(result, args.output)
    return code
