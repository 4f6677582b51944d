import csv
import io
import json
import re
from fractions import Fraction

from conftest import GOLDEN
from symsearch.domains import VacuumState, make_vacuum, vacuum_mirror
from symsearch.explicit import parse_problem_file
from symsearch.export import FIELDS, export_dot, write_metrics
from symsearch.search import Outcome, Path, SearchMetrics, SearchResult
from symsearch.symmetry import SymmetryGroup, quotient

NODE = re.compile(r'^  "([^"]+)"( \[.*\])?;$', re.M)


def nodes(dot: bytes):
    return NODE.findall(dot.decode())


def test_single_edge_golden():
    p = parse_problem_file((GOLDEN / "single.txt").read_bytes()).to_problem()
    expected = b'digraph G {\n  "a";\n  "b" [peripheries=2];\n  "a" -> "b" [label="go"];\n}\n'
    assert export_dot(p) == expected == (GOLDEN / "single.dot").read_bytes()


def test_vacuum_orbit_colouring(vac2):
    dot = export_dot(vac2, SymmetryGroup((vacuum_mirror(2),)))
    found = nodes(dot)
    assert len(found) == 8
    colours = {re.search(r'fillcolor="(\w+)"', attrs).group(1) for _, attrs in found}
    assert len(colours) == 4
    assert dot == (GOLDEN / "vacuum2_orbits.dot").read_bytes()


def test_quotient_dot_has_four_nodes(vac2):
    qp, _ = quotient(vac2, SymmetryGroup((vacuum_mirror(2),)))
    assert len(nodes(export_dot(qp))) == 4


def test_dot_is_stable(vac2):
    assert export_dot(vac2) == export_dot(vac2) == (GOLDEN / "vacuum2.dot").read_bytes()


def test_dot_escapes_quotes():
    from symsearch.search import Problem

    p = Problem('say "hi"', lambda s: [], lambda s, a: s, lambda s: True)
    assert b'"say \\"hi\\""' in export_dot(p)


def found(cost, length):
    start = VacuumState(0, (True, True))
    steps = tuple(("Suck", start) for _ in range(length))
    return SearchResult(Outcome.FOUND, SearchMetrics(5, 10, 2, 0.0123), Path(start, steps, Fraction(cost)))


def test_csv_found_row():
    out = write_metrics([("bfs", found(3, 3))], "csv").decode()
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == FIELDS
    assert rows[1] == ["bfs", "Found", "3", "3", "5", "10", "2", "12.300"]


def test_csv_no_solution_has_empty_cost():
    out = write_metrics([("x", SearchResult(Outcome.NO_SOLUTION, SearchMetrics(4, 4, 1)))], "csv", timing=False)
    assert out.decode().splitlines()[1] == "x,NoSolution,,,4,4,1,0.000"


def test_rows_follow_input_order():
    out = write_metrics([("second", found(1, 1)), ("first", found(2, 2))], "csv").decode()
    assert [line.split(",")[0] for line in out.splitlines()[1:]] == ["second", "first"]


def test_json_mirrors_csv_fields():
    data = json.loads(write_metrics([("a", found(Fraction(1, 2), 1)), ("b", found(3, 3))], "json", timing=False))
    assert [tuple(r) for r in data] == [FIELDS, FIELDS]
    assert data[0]["cost"] == "1/2" and data[1]["cost"] == 3
    assert data[1]["wall_time_ms"] == 0.0


def test_inapplicable_row():
    out = write_metrics([("bidir", SearchResult(Outcome.INAPPLICABLE))], "csv").decode()
    assert out.splitlines()[1] == "bidir,Inapplicable,,,,,,"


def test_no_timing_is_byte_stable():
    p = make_vacuum(2)
    from symsearch.search import bfs

    a = write_metrics([("bfs", bfs(p))], "csv", timing=False)
    b = write_metrics([("bfs", bfs(p))], "csv", timing=False)
    assert a == b
