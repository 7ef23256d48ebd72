"""
Plot-ready report tables.

Every analysis returns a Report: one row per cell, rendered as TSV (floats
rounded for display) or JSON (full precision). Rendering is pure, so the
same inputs always give byte-identical output.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Optional

import orjson


def _format(value: Any, precision: int) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{precision}f}"
    return str(value)


@dataclass
class Report:
    """
    A named table.

    Attributes:
        name: Report kind, e.g. ``parallelism_histogram``
        columns: Column order for TSV output
        rows: One dict per cell
        summary: Scalar facts about the whole table (totals, coverage)
        precision: Decimal places for floats in TSV output
    """

    name: str
    columns: list[str]
    rows: list[dict[str, Any]]
    summary: dict[str, Any] = field(default_factory=dict)
    precision: int = 1

    def to_tsv(self, precision: Optional[int] = None) -> str:
        precision = self.precision if precision is None else precision
        lines = ["\t".join(self.columns)]
        for row in self.rows:
            lines.append("\t".join(_format(row.get(col), precision) for col in self.columns))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict[str, Any]:
        return {"report": self.name, "columns": self.columns, "rows": self.rows, "summary": self.summary}

    def to_json(self) -> bytes:
        return orjson.dumps(self.to_dict(), option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_NON_STR_KEYS) + b"\n"

    def render(self, fmt: str = "tsv") -> bytes:
        if fmt == "tsv":
            return self.to_tsv().encode("utf-8")
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown report format: {fmt}")
