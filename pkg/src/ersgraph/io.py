"""JSON files for metrics and graphs, and atomic report output.

Metric file::

    {"labels": ["a", "b"], "d": [[0, "1/4"], ["1/4", 0]]}

Graph file::

    {"labels": ["a", "b"], "edges": [{"u": "a", "v": "b", "w": "3/2"}]}

Scalars may be integers, decimals (read exactly in the rational backend) or
``"p/q"`` strings.  Rationals are written back as ``"p/q"`` strings.
"""

from __future__ import annotations

import json
import os
import tempfile

from .errors import ErsError, ParseError
from .ers import graph_to_dict
from .graph import WeightedGraph, build_graph
from .metric import MetricSpace, validate_metric
from .numeric import RATIONAL, as_array, format_scalar


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _labels(doc, path):
    labels = doc.get("labels")
    if not isinstance(labels, list) or not all(isinstance(v, (str, int)) for v in labels):
        raise ParseError(f"{path}: 'labels' must be a list of strings")
    labels = [str(v) for v in labels]
    if len(set(labels)) != len(labels):
        raise ParseError(f"{path}: duplicate labels")
    return labels


def metric_from_dict(doc: dict, backend: str = RATIONAL, path: str = "<metric>") -> MetricSpace:
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object")
    labels = _labels(doc, path)
    rows = doc.get("d")
    if not isinstance(rows, list) or len(rows) != len(labels) or not all(
            isinstance(r, list) and len(r) == len(labels) for r in rows):
        raise ParseError(f"{path}: 'd' must be a {len(labels)}x{len(labels)} matrix")
    return validate_metric(labels, as_array(rows, backend))


def graph_from_dict(doc: dict, backend: str = RATIONAL, path: str = "<graph>") -> WeightedGraph:
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object")
    labels = _labels(doc, path)
    edges = doc.get("edges")
    if not isinstance(edges, list):
        raise ParseError(f"{path}: 'edges' must be a list")
    parsed = []
    for e in edges:
        if isinstance(e, dict) and {"u", "v", "w"} <= e.keys():
            parsed.append((str(e["u"]), str(e["v"]), e["w"]))
        elif isinstance(e, list) and len(e) == 3:
            parsed.append((str(e[0]), str(e[1]), e[2]))
        else:
            raise ParseError(f"{path}: bad edge entry {e!r}")
    return build_graph(labels, parsed, backend)


def read_metric(path, backend: str = RATIONAL) -> MetricSpace:
    return metric_from_dict(_load(path), backend, str(path))


def read_graph(path, backend: str = RATIONAL) -> WeightedGraph:
    return graph_from_dict(_load(path), backend, str(path))


def metric_to_dict(m: MetricSpace) -> dict:
    return {"labels": list(m.labels),
            "d": [[format_scalar(v) for v in row] for row in m.d]}


def write_text_atomic(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path, doc) -> None:
    write_text_atomic(path, json.dumps(doc, indent=2) + "\n")


def write_metric(path, m: MetricSpace) -> None:
    write_json(path, metric_to_dict(m))


def write_graph(path, g: WeightedGraph) -> None:
    write_json(path, graph_to_dict(g))


__all__ = [
    "ErsError", "ParseError", "read_metric", "read_graph", "write_metric", "write_graph",
    "metric_from_dict", "graph_from_dict", "metric_to_dict", "graph_to_dict",
    "write_json", "write_text_atomic",
]
