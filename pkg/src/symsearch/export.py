"""Graphviz DOT export of reachable state spaces and CSV/JSON metric tables."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import replace
from fractions import Fraction
from typing import Optional

from .search import DEFAULT_CAP, Outcome, Problem, SearchResult, enumerate_reachable
from .symmetry import SymmetryGroup, canonical

# Graphviz X11 colour names, cycled when there are more orbits than entries.
PALETTE = (
    "lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon",
    "lightcyan", "wheat", "thistle", "lightgoldenrod", "aquamarine", "mistyrose",
)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(problem: Problem, group: Optional[SymmetryGroup] = None,
               cap: int = DEFAULT_CAP, name: str = "G") -> bytes:
    """Render the reachable state space as a DOT digraph.

    Layout: ``digraph G {`` then one node statement per line in discovery
    order, then one edge statement per line (source discovery order, then
    action order), then ``}``.  Goals get ``peripheries=2``; with ``group``
    each orbit shares one fill colour.
    """
    _, states = enumerate_reachable(problem, cap)
    rs = problem.render_state
    lines = [f"digraph {name} {{"]
    colours: dict = {}
    if group is not None and problem.encode is not group.encode:
        group = replace(group, encode=problem.encode)
    for s in states:
        attrs = []
        if problem.goal_test(s):
            attrs.append("peripheries=2")
        if group is not None:
            rep = problem.encode(canonical(s, group))
            colour = colours.setdefault(rep, PALETTE[len(colours) % len(PALETTE)])
            attrs += ["style=filled", f"fillcolor={_quote(colour)}"]
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(rs(s))}{suffix};")
    for s in states:
        for a in problem.actions(s):
            t = problem.result(s, a)
            lines.append(f"  {_quote(rs(s))} -> {_quote(rs(t))} [label={_quote(problem.render_action(a))}];")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


FIELDS = ("label", "outcome", "cost", "length", "nodes_expanded",
          "nodes_generated", "max_frontier", "wall_time_ms")


def _fmt_cost(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _row(label: str, res: SearchResult, timing: bool) -> dict:
    row = dict.fromkeys(FIELDS)
    row["label"] = label
    row["outcome"] = res.outcome.value
    if res.path is not None:
        row["cost"] = Fraction(res.path.total_cost)
        row["length"] = len(res.path)
    if res.outcome is not Outcome.INAPPLICABLE:
        m = res.metrics
        row["nodes_expanded"] = m.nodes_expanded
        row["nodes_generated"] = m.nodes_generated
        row["max_frontier"] = m.max_frontier
        row["wall_time_ms"] = round(m.wall_time * 1000, 3) if timing else 0.0
    return row


def write_metrics(results, format: str = "csv", timing: bool = True) -> bytes:
    """Serialize ``[(label, SearchResult), ...]`` in input order.

    ``timing=False`` writes a zero wall time so output is byte-stable.
    """
    rows = [_row(label, res, timing) for label, res in results]
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FIELDS)
        for r in rows:
            cells = []
            for f in FIELDS:
                v = r[f]
                if v is None:
                    cells.append("")
                elif f == "cost":
                    cells.append(_fmt_cost(v))
                elif f == "wall_time_ms":
                    cells.append(f"{v:.3f}")
                else:
                    cells.append(str(v))
            w.writerow(cells)
        return buf.getvalue().encode("utf-8")
    if format == "json":
        for r in rows:
            if r["cost"] is not None:
                c = r["cost"]
                r["cost"] = c.numerator if c.denominator == 1 else _fmt_cost(c)
        return (json.dumps(rows, indent=2) + "\n").encode("utf-8")
    raise ValueError(f"unknown metrics format {format!r}")
