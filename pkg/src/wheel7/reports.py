"""Deterministic rendering of command reports as CSV, JSON, or aligned text.

The same row dictionaries back all three formats; column order is fixed per
command so identical inputs always serialize to identical bytes.
"""

from __future__ import annotations

import json
from importlib import resources

COLUMNS = {
    "sieve": ["limit", "blocks", "prime_count", "seven_blocks", "from_cache"],
    "tuples": ["x", "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "mask", "count"],
    "pi7": ["x", "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "mask", "count"],
    "phi3": ["m", "factorization", "formula", "oracle", "match"],
    "s7": ["n", "modulus", "count", "oracle", "match"],
    "density": ["n", "p_n3", "density_log", "ratio", "recurrence_factor", "growth_flag"],
    "merge": ["m", "n", "count", "spacing", "oracle", "match"],
    "verify": ["n", "p_n4", "s", "bound", "pi7", "holds", "margin"],
    "verify_density": [
        "n", "even_density", "avg_density_log", "k_n4", "sift_budget", "dominance",
    ],
    "lemma43": ["n", "r", "lhs", "rhs", "holds"],
    "crossover": ["a", "n_max", "n0", "first_stable"],
}


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return " ".join(_cell(v) for v in value)
    return str(value)


def render_csv(columns_key: str, rows: list) -> str:
    cols = COLUMNS[columns_key]
    lines = [",".join(cols)]
    for row in rows:
        lines.append(",".join(_cell(row.get(c)) for c in cols))
    return "\n".join(lines) + "\n"


def render_table(columns_key: str, rows: list, summary: dict) -> str:
    cols = COLUMNS[columns_key]
    cells = [[_cell(row.get(c)) for c in cols] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(cols)]
    out = []
    if summary:
        out.extend(f"{key}: {_cell(val)}" for key, val in summary.items())
        out.append("")
    out.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
    for r in cells:
        out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(out) + "\n"


def render_json(command: str, params: dict, rows: list, summary: dict) -> str:
    report = {"command": command, "params": params, "rows": rows, "summary": summary}
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def report_schema() -> dict:
    """The shipped JSON schema that every --format json report satisfies."""
    with resources.files("wheel7.schemas").joinpath("report.schema.json").open() as fh:
        return json.load(fh)
