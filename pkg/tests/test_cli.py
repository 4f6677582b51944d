import shutil

import pytest

from conftest import GOLDEN
from symsearch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_vacuum(capsys):
    code, out, _ = run(capsys, "solve", "--domain", "vacuum", "--n", "2", "--init", "L,1,1", "--algo", "bfs")
    assert code == 0
    lines = out.splitlines()
    assert lines[1:4] == ["Suck", "Right", "Suck"]
    assert "cost: 3" in lines


def test_solve_mc_mirror_meet(capsys):
    code, out, _ = run(capsys, "solve", "--domain", "mc", "--algo", "mirror-meet")
    assert code == 0
    assert "length: 11" in out.splitlines()


def test_solve_missing_file(capsys):
    code, _, err = run(capsys, "solve", "--file", "missing.txt")
    assert code == 1 and "not found" in err


def test_solve_cutoff_and_no_solution_exit_2(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", "--domain", "hanoi", "--algo", "dls", "--limit", "3")
    assert code == 2 and "Cutoff" in out
    f = tmp_path / "stuck.txt"
    f.write_text("state a\nstate b\ninit a\ngoal b\n")
    code, out, _ = run(capsys, "solve", "--file", str(f))
    assert code == 2 and "NoSolution" in out


@pytest.mark.parametrize("argv", [
    ["solve"],
    ["solve", "--domain", "mc", "--file", "x"],
    ["solve", "--domain", "mc", "--algo", "astar"],
    ["solve", "--domain", "vacuum", "--init", "Q,1"],
    ["solve", "--domain", "vacuum", "--algo", "mirror-meet"],
    ["compare", "--domain", "mc", "--algos", "bfs"],
])
def test_usage_and_data_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("symsearch: error:")


@pytest.mark.parametrize("argv", [["solve", "--bogus"], ["frobnicate"], ["solve", "--domain", "chess"]])
def test_argparse_errors_use_exit_1(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 1


def test_parse_error_in_file_exit_1(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("state a\nedge a go b x\n")
    code, _, err = run(capsys, "solve", "--file", str(f))
    assert code == 1 and "line 2" in err


def test_compare_hanoi(capsys):
    code, out, _ = run(capsys, "compare", "--domain", "hanoi", "--disks", "3",
                       "--algos", "bfs,mirror-meet", "--format", "csv", "--no-timing")
    assert code == 0
    rows = [r.split(",") for r in out.splitlines()[1:]]
    assert len(rows) == 2
    assert int(rows[1][4]) < int(rows[0][4])


def test_compare_vacuum_quotient(capsys):
    code, out, _ = run(capsys, "compare", "--domain", "vacuum", "--n", "2", "--init", "L,1,1",
                       "--algos", "bfs,quotient-bfs")
    bfs_row, q_row = [r.split(",") for r in out.splitlines()[1:]]
    assert bfs_row[2] == q_row[2] == "3"
    assert int(q_row[4]) <= int(bfs_row[4])


def test_compare_marks_inapplicable(capsys):
    code, out, err = run(capsys, "compare", "--domain", "vacuum", "--algos", "bidir,bfs")
    assert code == 0
    assert out.splitlines()[1].startswith("bidir,Inapplicable")
    assert "NotInvertible" in err


@pytest.mark.parametrize("name,argv", [
    ("hanoi3.csv", ["compare", "--domain", "hanoi", "--disks", "3",
                    "--algos", "bfs,bidir,mirror-meet,ucs", "--format", "csv"]),
    ("vacuum2.csv", ["compare", "--domain", "vacuum", "--n", "2", "--init", "L,1,1",
                     "--algos", "bfs,quotient-bfs,bidir", "--format", "csv"]),
    ("mc.json", ["compare", "--domain", "mc", "--algos", "bfs,mirror-meet,bidir,quotient-bfs",
                 "--format", "json"]),
    ("vacuum2.dot", ["export", "--domain", "vacuum", "--n", "2", "--init", "L,1,1"]),
    ("vacuum2_quotient.dot", ["export", "--domain", "vacuum", "--n", "2", "--init", "L,1,1", "--quotient"]),
    ("vacuum2_orbits.dot", ["export", "--domain", "vacuum", "--n", "2", "--init", "L,1,1", "--color-orbits"]),
    ("mc.dot", ["export", "--domain", "mc"]),
])
def test_golden_files(tmp_path, capsys, name, argv):
    target = tmp_path / name
    assert main(argv + ["--no-timing", "--out", str(target)]) == 0
    capsys.readouterr()
    assert target.read_bytes() == (GOLDEN / name).read_bytes()
    again = tmp_path / ("again-" + name)
    main(argv + ["--no-timing", "--out", str(again)])
    assert again.read_bytes() == target.read_bytes()


def test_export_node_counts(tmp_path):
    for extra, expected in (([], 8), (["--quotient"], 4)):
        out = tmp_path / "v.dot"
        main(["export", "--domain", "vacuum", "--n", "2", "--init", "L,1,1", "--out", str(out)] + extra)
        body = out.read_text().splitlines()
        assert sum(1 for line in body if line.endswith(";") and "->" not in line) == expected
    out = tmp_path / "mc.dot"
    main(["export", "--domain", "mc", "--out", str(out)])
    assert sum(1 for line in out.read_text().splitlines() if line.endswith(";") and "->" not in line) == 16


def test_export_from_file(tmp_path, capsys):
    src = tmp_path / "single.txt"
    shutil.copy(GOLDEN / "single.txt", src)
    assert main(["export", "--file", str(src)]) == 0
    assert capsys.readouterr().out.encode() == (GOLDEN / "single.dot").read_bytes()


def test_export_unwritable_target(capsys, tmp_path):
    code = main(["export", "--domain", "mc", "--out", str(tmp_path / "no" / "such" / "dir.dot")])
    assert code == 1


def test_file_mirror_meet_with_named_sym(capsys, tmp_path):
    f = tmp_path / "line.txt"
    f.write_text("state a\nstate m\nstate b\ninit a\ngoal b\n"
                 "edge a r m 1\nedge m r b 1\nedge b l m 1\nedge m l a 1\n"
                 "sym mirror a->b b->a\nsymact mirror r->l l->r\n")
    code, out, _ = run(capsys, "solve", "--file", str(f), "--algo", "mirror-meet", "--sym", "mirror")
    assert code == 1  # r and l are inverses of each other, not self-inverse labels
    code, out, _ = run(capsys, "solve", "--file", str(f), "--algo", "bfs")
    assert code == 0 and "length: 2" in out
