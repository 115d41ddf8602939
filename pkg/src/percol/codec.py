"""
Text formats for colorings, matrices, semicolorings, catalogs and graphs.

Formats:
    coloring      ``{"family": {"kind": "empty", "n": 2}, "colors": 2,``
                  ``"period": [[2, 0], [0, 2]]}``
    matrix        ``{"matrix": [[0, 4], [4, 0]]}``
    semicoloring  ``{"parity": "even", "n": 2, "period": [[2, 0], [0, 2]]}``
    catalog       JSON lines: a ``{"catalog": {...}}`` header, then one
                  ``{"coloring": ..., "matrix": ..., "class": ...}`` per entry
    summary       CSV with columns kind, n, k, p, class, count
    edge list     first line ``V E``, then ``E`` lines ``u v``
    vertex colors JSON array of integers

Every ``parse_*`` function raises ``ParseError`` on malformed input; colors
with gaps are compacted on load.
"""

import csv
import io
import json
from typing import Any, Dict, List, Tuple

from .constructions import Parity, Semicoloring
from .enumeration import Catalog, CatalogEntry, ClassLabel
from .finite import FiniteGraph, GraphError, VertexColoring, graph_from_edges, sorted_edges
from .multipath import (
    ColoringError,
    Family,
    NotPerfect,
    ParameterMatrix,
    PeriodicColoring,
    check_perfect,
)


class ParseError(ValueError):
    """Raised when text cannot be decoded into the expected object."""

    pass


_DECODE_ERRORS = (KeyError, TypeError, ValueError, IndexError, AttributeError)


def _load_json(content: str) -> Any:
    try:
        return json.loads(content)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON: {e}") from e


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as f:
        return f.read()


def _write(content: str, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(content)


# ---------------------------------------------------------------------------
# Colorings and matrices
# ---------------------------------------------------------------------------


def family_to_dict(family: Family) -> Dict[str, Any]:
    return {"kind": family.kind.value, "n": family.n}


def family_from_dict(data: Dict[str, Any]) -> Family:
    try:
        return Family(data["kind"], int(data["n"]))
    except ColoringError as e:
        raise ParseError(str(e)) from e
    except _DECODE_ERRORS as e:
        raise ParseError(f"Invalid family: {data!r}") from e


def coloring_to_dict(c: PeriodicColoring) -> Dict[str, Any]:
    return {
        "family": family_to_dict(c.family),
        "colors": c.colors,
        "period": [list(profile) for profile in c.period],
    }


def coloring_from_dict(data: Dict[str, Any]) -> PeriodicColoring:
    try:
        family = family_from_dict(data["family"])
        colors = int(data["colors"])
        period = [tuple(int(x) for x in profile) for profile in data["period"]]
    except ParseError:
        raise
    except _DECODE_ERRORS as e:
        raise ParseError(f"Invalid coloring: {e}") from e
    for i, profile in enumerate(period):
        if len(profile) != colors:
            raise ParseError(f"Block {i} has {len(profile)} counts, expected {colors}")
    try:
        return PeriodicColoring.normalized(family, period)
    except ColoringError as e:
        raise ParseError(str(e)) from e


def parse_coloring(content: str) -> PeriodicColoring:
    return coloring_from_dict(_load_json(content))


def parse_coloring_file(path: str) -> PeriodicColoring:
    return parse_coloring(_read(path))


def serialize_coloring(c: PeriodicColoring) -> str:
    return json.dumps(coloring_to_dict(c))


def serialize_coloring_to_file(c: PeriodicColoring, path: str) -> None:
    _write(serialize_coloring(c) + "\n", path)


def parse_matrix(content: str) -> ParameterMatrix:
    data = _load_json(content)
    try:
        return ParameterMatrix(tuple(tuple(row) for row in data["matrix"]))
    except ColoringError as e:
        raise ParseError(str(e)) from e
    except _DECODE_ERRORS as e:
        raise ParseError(f"Invalid matrix: {e}") from e


def parse_matrix_file(path: str) -> ParameterMatrix:
    return parse_matrix(_read(path))


def serialize_matrix(matrix: ParameterMatrix) -> str:
    return json.dumps({"matrix": [list(row) for row in matrix.rows]})


def parse_semicoloring(content: str) -> Semicoloring:
    data = _load_json(content)
    try:
        family = Family.empty(int(data["n"]))
        period = tuple(tuple(int(x) for x in profile) for profile in data["period"])
        return Semicoloring(Parity(data["parity"]), family, period)
    except ColoringError as e:
        raise ParseError(str(e)) from e
    except _DECODE_ERRORS as e:
        raise ParseError(f"Invalid semicoloring: {e}") from e


def parse_semicoloring_file(path: str) -> Semicoloring:
    return parse_semicoloring(_read(path))


def serialize_semicoloring(s: Semicoloring) -> str:
    return json.dumps(
        {"parity": s.parity.value, "n": s.family.n, "period": [list(p) for p in s.period]}
    )


# ---------------------------------------------------------------------------
# Catalogs
# ---------------------------------------------------------------------------


def serialize_catalog(catalog: Catalog) -> str:
    header = {
        "catalog": {
            "family": family_to_dict(catalog.family),
            "max_colors": catalog.max_colors,
            "max_period": catalog.max_period,
        }
    }
    lines = [json.dumps(header)]
    for entry in catalog:
        lines.append(
            json.dumps(
                {
                    "coloring": coloring_to_dict(entry.coloring),
                    "matrix": [list(row) for row in entry.matrix.rows],
                    "class": entry.label.value if entry.label is not None else None,
                }
            )
        )
    return "\n".join(lines) + "\n"


def serialize_catalog_to_file(catalog: Catalog, path: str) -> None:
    _write(serialize_catalog(catalog), path)


def parse_catalog(content: str) -> Catalog:
    """Read a JSON-lines catalog; every entry's matrix is re-verified."""
    lines = [line for line in content.splitlines() if line.strip()]
    if not lines:
        raise ParseError("Empty catalog")
    try:
        header = _load_json(lines[0])["catalog"]
        family = family_from_dict(header["family"])
        max_colors = int(header["max_colors"])
        max_period = int(header["max_period"])
    except ParseError:
        raise
    except _DECODE_ERRORS as e:
        raise ParseError(f"Invalid catalog header: {e}") from e
    entries = []
    for number, line in enumerate(lines[1:], start=2):
        data = _load_json(line)
        try:
            coloring = coloring_from_dict(data["coloring"])
            matrix = ParameterMatrix(tuple(tuple(row) for row in data["matrix"]))
            label = ClassLabel(data["class"]) if data["class"] is not None else None
        except ParseError as e:
            raise ParseError(f"Line {number}: {e}") from e
        except _DECODE_ERRORS as e:
            raise ParseError(f"Line {number}: invalid entry: {e}") from e
        if coloring.family != family:
            raise ParseError(f"Line {number}: entry family {coloring.family} is not {family}")
        actual = check_perfect(coloring)
        if isinstance(actual, NotPerfect) or actual != matrix:
            raise ParseError(f"Line {number}: matrix does not match coloring {coloring}")
        entries.append(CatalogEntry(coloring, matrix, label))
    return Catalog(family, max_colors, max_period, tuple(entries))


def parse_catalog_file(path: str) -> Catalog:
    return parse_catalog(_read(path))


SUMMARY_COLUMNS = ("kind", "n", "k", "p", "class", "count")

SummaryRow = Tuple[str, int, int, int, str, int]


def summary_rows(catalog: Catalog) -> List[SummaryRow]:
    """Rows ``(kind, n, k, p, class, count)`` of a catalog."""
    kind, n = catalog.family.kind.value, catalog.family.n
    return [(kind, n, k, p, label, count) for k, p, label, count in catalog.summary()]


def serialize_summary(catalog: Catalog) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    writer.writerows(summary_rows(catalog))
    return buffer.getvalue()


def serialize_summary_to_file(catalog: Catalog, path: str) -> None:
    _write(serialize_summary(catalog), path)


def is_summary(content: str) -> bool:
    """True when ``content`` starts with the CSV summary header."""
    lines = content.lstrip().splitlines()
    return bool(lines) and lines[0].strip() == ",".join(SUMMARY_COLUMNS)


def parse_summary(content: str) -> List[SummaryRow]:
    """Rows ``(kind, n, k, p, class, count)`` of a CSV summary."""
    reader = csv.DictReader(io.StringIO(content))
    if tuple(reader.fieldnames or ()) != SUMMARY_COLUMNS:
        raise ParseError(f"Summary columns must be {', '.join(SUMMARY_COLUMNS)}")
    try:
        return [
            (
                row["kind"],
                int(row["n"]),
                int(row["k"]),
                int(row["p"]),
                row["class"],
                int(row["count"]),
            )
            for row in reader
        ]
    except _DECODE_ERRORS as e:
        raise ParseError(f"Invalid summary row: {e}") from e


def parse_summary_file(path: str) -> List[SummaryRow]:
    return parse_summary(_read(path))


def parse_counts(content: str) -> List[SummaryRow]:
    """Summary rows of either a CSV summary or a JSON-lines catalog."""
    if is_summary(content):
        return parse_summary(content)
    return summary_rows(parse_catalog(content))


def parse_counts_file(path: str) -> List[SummaryRow]:
    return parse_counts(_read(path))


def is_summary_file(path: str) -> bool:
    return is_summary(_read(path))


# ---------------------------------------------------------------------------
# Finite graphs
# ---------------------------------------------------------------------------


def parse_edge_list(content: str) -> FiniteGraph:
    lines = [line.split() for line in content.splitlines() if line.strip()]
    if not lines:
        raise ParseError("Empty edge list")
    try:
        order, count = (int(x) for x in lines[0])
        edges = [(int(u), int(v)) for u, v in lines[1:]]
    except _DECODE_ERRORS as e:
        raise ParseError(f"Invalid edge list: {e}") from e
    if len(edges) != count:
        raise ParseError(f"Header promises {count} edges, found {len(edges)}")
    try:
        return graph_from_edges(order, edges)
    except GraphError as e:
        raise ParseError(str(e)) from e


def parse_edge_list_file(path: str) -> FiniteGraph:
    return parse_edge_list(_read(path))


def serialize_edge_list(graph: FiniteGraph) -> str:
    edges = sorted_edges(graph)
    lines = [f"{graph.number_of_nodes()} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def serialize_edge_list_to_file(graph: FiniteGraph, path: str) -> None:
    _write(serialize_edge_list(graph), path)


def parse_vertex_coloring(content: str) -> VertexColoring:
    data = _load_json(content)
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise ParseError("Vertex coloring must be a JSON array of integers")
    return VertexColoring.normalized(data)


def parse_vertex_coloring_file(path: str) -> VertexColoring:
    return parse_vertex_coloring(_read(path))


def serialize_vertex_coloring(coloring: VertexColoring) -> str:
    return json.dumps(list(coloring.colors))
