"""Rectangular result tables with a metadata block, written as CSV or JSON."""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

__all__ = ["ResultTable", "format_number", "read_csv", "read_json"]


def format_number(value) -> str:
    """17 significant digits; exact round trip for every finite double."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def _json_number(value):
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    v = float(value)
    # JSON has no inf/nan literals; keep them as strings
    return v if math.isfinite(v) else format(v, "g")


@dataclass
class ResultTable:
    columns: list[str]
    rows: list[list[float]]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        width = len(self.columns)
        if len(set(self.columns)) != width:
            raise ValueError("duplicate column names")
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} values, expected {width}")

    def column(self, name: str) -> list:
        j = self.columns.index(name)
        return [row[j] for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        for key, value in self.metadata.items():
            text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
            buf.write(f"# {key}: {text}\n")
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(format_number(v) for v in row) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "metadata": self.metadata,
            "columns": self.columns,
            "rows": [[_json_number(v) for v in row] for row in self.rows],
        }
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")


def read_csv(text: str) -> ResultTable:
    metadata, lines = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            try:
                metadata[key] = json.loads(value)
            except json.JSONDecodeError:
                metadata[key] = value
        elif line:
            lines.append(line)
    columns = lines[0].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    return ResultTable(columns, rows, metadata)


def read_json(text: str) -> ResultTable:
    doc = json.loads(text)
    rows = [[float(v) if isinstance(v, str) else v for v in row] for row in doc["rows"]]
    return ResultTable(doc["columns"], rows, doc["metadata"])
