"""
Coloring file formats for Balanced Coloring.

JSON: ``{"k": K, "colors": [c_0, c_1, ...]}`` validated by ColoringFile.

CSV: a ``# k=K`` line, an optional ``vertex,color`` header, then rows covering ``0..n-1`` in any
order. Writers emit vertices in increasing order.
"""

import csv
import enum
import io
import re
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from balanced_coloring.errors import ParseError
from balanced_coloring.models.coloring import Coloring
from balanced_coloring.schemas import ColoringFile

K_HEADER = re.compile(r"^#\s*k\s*=\s*(\d+)\s*$")


class ColoringFormat(str, enum.Enum):
    JSON = "json"
    CSV = "csv"


def detect_format(path: Path | str) -> ColoringFormat:
    if Path(path).suffix.lower() == ".csv":
        return ColoringFormat.CSV
    return ColoringFormat.JSON


def read_coloring(path: Path | str, fmt: Optional[ColoringFormat | str] = None) -> Coloring:
    fmt = detect_format(path) if fmt is None else ColoringFormat(fmt)
    text = Path(path).read_text()
    if fmt is ColoringFormat.CSV:
        return parse_csv(text)
    return parse_json(text)


def write_coloring(coloring: Coloring, path: Path | str, fmt: Optional[ColoringFormat | str] = None) -> None:
    fmt = detect_format(path) if fmt is None else ColoringFormat(fmt)
    text = format_csv(coloring) if fmt is ColoringFormat.CSV else format_json(coloring)
    Path(path).write_text(text)


def parse_json(text: str) -> Coloring:
    try:
        return ColoringFile.model_validate_json(text).to_coloring()
    except ValidationError as exc:
        errors = "; ".join(error["msg"] for error in exc.errors())
        raise ParseError("invalid coloring JSON: " + errors) from exc


def format_json(coloring: Coloring) -> str:
    return ColoringFile.from_coloring(coloring).model_dump_json(indent=2) + "\n"


def parse_csv(text: str) -> Coloring:
    k: Optional[int] = None
    assigned: dict[int, int] = {}
    for line_number, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip():
            continue
        first = row[0].strip()
        if first.startswith("#"):
            match = K_HEADER.match(",".join(row).strip())
            if match:
                k = int(match.group(1))
            continue
        if [cell.strip().lower() for cell in row] == ["vertex", "color"]:
            continue
        if len(row) != 2:
            raise ParseError("expected 'vertex,color', got '" + ",".join(row) + "'", line_number)
        try:
            vertex, color = int(row[0]), int(row[1])
        except ValueError:
            raise ParseError("expected integers, got '" + ",".join(row) + "'", line_number) from None
        if vertex in assigned:
            raise ParseError("vertex " + str(vertex) + " colored twice", line_number)
        if vertex < 0:
            raise ParseError("vertex ids must be nonnegative", line_number)
        assigned[vertex] = color

    if k is None:
        raise ParseError("missing '# k=K' header")
    missing = sorted(set(range(len(assigned))) - set(assigned))
    if missing:
        raise ParseError("vertex " + str(missing[0]) + " has no color")
    colors = tuple(assigned[v] for v in range(len(assigned)))
    for v, color in enumerate(colors):
        if not 1 <= color <= k:
            raise ParseError("vertex " + str(v) + " has color " + str(color) + " outside 1.." + str(k))
    return Coloring(k, colors)


def format_csv(coloring: Coloring) -> str:
    buffer = io.StringIO()
    buffer.write("# k=" + str(coloring.k) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["vertex", "color"])
    for v, color in enumerate(coloring.colors):
        writer.writerow([v, color])
    return buffer.getvalue()
