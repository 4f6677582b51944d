"""Command-line front end: ``symsearch solve|compare|export``.

Exit status: 0 when a plan is found (or the export succeeds), 2 for
NoSolution/Cutoff, 1 for usage and data errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from typing import Optional

from . import domains
from .errors import SearchError
from .explicit import load_problem_file
from .export import export_dot, write_metrics
from .search import (
    DEFAULT_CAP,
    Outcome,
    Problem,
    SearchResult,
    bfs,
    bidirectional_bfs,
    depth_limited,
    uniform_cost,
)
from .symmetry import SymmetryGroup, mirror_meet, quotient, quotient_bfs

ALGORITHMS = ("bfs", "ucs", "dls", "bidir", "mirror-meet", "quotient-bfs")
EXIT_FOUND, EXIT_ERROR, EXIT_NO_PLAN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    domain: Optional[str] = None
    file: Optional[str] = None
    n: int = 2
    disks: int = 3
    missionaries: int = 3
    cannibals: int = 3
    init: Optional[str] = None
    algos: tuple = ("bfs",)
    limit: int = 50
    sym: Optional[str] = None
    format: str = "csv"
    out: Optional[str] = None
    cap: int = DEFAULT_CAP
    timing: bool = True
    quotient: bool = False
    color_orbits: bool = False

    def validate(self):
        if (self.domain is None) == (self.file is None):
            raise UsageError("exactly one of --domain or --file is required")
        bad = [a for a in self.algos if a not in ALGORITHMS]
        if bad:
            raise UsageError(f"unknown algorithm {bad[0]!r} (choose from {', '.join(ALGORITHMS)})")


def build_problem(cfg: RunConfig):
    """Return ``(problem, mirror_or_None, group)`` for the configured source."""
    if cfg.file is not None:
        try:
            ep = load_problem_file(cfg.file)
        except FileNotFoundError:
            raise UsageError(f"file not found: {cfg.file}") from None
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.file}: {exc.strerror}") from None
        problem = ep.to_problem()
        group = ep.group()
        mirror = None
        if ep.syms:
            name = cfg.sym or ep.syms[0].name
            try:
                mirror = ep.automorphism(name)
            except KeyError:
                raise UsageError(f"no symmetry named {name!r} in {cfg.file}") from None
        if cfg.init is not None:
            problem = problem.with_initial(problem.parse_state(cfg.init))
        return problem, mirror, group
    params = {}
    if cfg.domain == "vacuum":
        params = {"n": cfg.n}
        problem = domains.make_vacuum(cfg.n)
    elif cfg.domain == "mc":
        params = {"m_total": cfg.missionaries, "c_total": cfg.cannibals}
        problem = domains.make_mc(cfg.missionaries, cfg.cannibals)
    elif cfg.domain == "hanoi":
        problem = domains.make_hanoi(cfg.disks)
    else:
        raise UsageError(f"unknown domain {cfg.domain!r}")
    if cfg.init is not None:
        problem = problem.with_initial(problem.parse_state(cfg.init))
    mirror = domains.shipped_mirror(cfg.domain, **params)
    group = domains.shipped_group(cfg.domain, **params)
    return problem, mirror, replace(group, encode=problem.encode)


def run_algorithm(name: str, problem: Problem, mirror, group: SymmetryGroup, cfg: RunConfig) -> SearchResult:
    if name == "bfs":
        return bfs(problem, cfg.cap)
    if name == "ucs":
        return uniform_cost(problem, cfg.cap)
    if name == "dls":
        return depth_limited(problem, cfg.limit, cfg.cap)
    if name == "bidir":
        return bidirectional_bfs(problem, cfg.cap)
    if name == "mirror-meet":
        if mirror is None:
            raise UsageError("mirror-meet needs a symmetry")
        return mirror_meet(problem, mirror, cfg.cap)
    if name == "quotient-bfs":
        return quotient_bfs(problem, group, cfg.cap)
    raise UsageError(f"unknown algorithm {name!r}")


def _exit_for(res: SearchResult) -> int:
    return EXIT_FOUND if res.outcome is Outcome.FOUND else EXIT_NO_PLAN


def solve_cmd(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    cfg.validate()
    problem, mirror, group = build_problem(cfg)
    res = run_algorithm(cfg.algos[0], problem, mirror, group, cfg)
    print(f"outcome: {res.outcome.value}", file=out)
    if res.path is not None:
        for a in res.path.actions:
            print(problem.render_action(a), file=out)
        print(f"cost: {res.path.total_cost}", file=out)
        print(f"length: {len(res.path)}", file=out)
    m = res.metrics
    print(f"nodes_expanded: {m.nodes_expanded}", file=out)
    print(f"nodes_generated: {m.nodes_generated}", file=out)
    print(f"max_frontier: {m.max_frontier}", file=out)
    if cfg.timing:
        print(f"wall_time_ms: {m.wall_time * 1000:.3f}", file=out)
    return _exit_for(res)


def compare_cmd(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    cfg.validate()
    if len(cfg.algos) < 2:
        raise UsageError("--algos needs at least two algorithms")
    problem, mirror, group = build_problem(cfg)
    rows = []
    for name in cfg.algos:
        try:
            res = run_algorithm(name, problem, mirror, group, cfg)
        except (SearchError, UsageError) as exc:
            res = SearchResult(Outcome.INAPPLICABLE, note=f"{type(exc).__name__}: {exc}")
            print(f"symsearch: {name} inapplicable: {res.note}", file=sys.stderr)
        rows.append((name, res))
    data = write_metrics(rows, cfg.format, timing=cfg.timing)
    _emit(data, cfg.out, out)
    return EXIT_FOUND


def export_cmd(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    cfg.validate()
    problem, mirror, group = build_problem(cfg)
    if cfg.quotient:
        problem, _ = quotient(problem, group, cfg.cap)
    data = export_dot(problem, group if cfg.color_orbits else None, cfg.cap)
    _emit(data, cfg.out, out)
    return EXIT_FOUND


def _emit(data: bytes, path, out):
    if path is None:
        out.write(data.decode("utf-8"))
        return
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _add_source_args(p):
    src = p.add_argument_group("problem source")
    src.add_argument("--domain", choices=domains.DOMAINS)
    src.add_argument("--file", help="explicit problem file")
    src.add_argument("--n", type=int, default=2, help="vacuum squares")
    src.add_argument("--disks", type=int, default=3, help="hanoi disks")
    src.add_argument("--missionaries", type=int, default=3)
    src.add_argument("--cannibals", type=int, default=3)
    src.add_argument("--init", help="initial state, e.g. L,1,1 or 3,3,1 or A,A,A")
    src.add_argument("--sym", help="symmetry name for mirror-meet on problem files")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="node cap")
    p.add_argument("--no-timing", dest="timing", action="store_false",
                   help="write zero wall times so outputs are reproducible")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symsearch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="run one search and print the plan")
    _add_source_args(p)
    p.add_argument("--algo", default="bfs", help=", ".join(ALGORITHMS))
    p.add_argument("--limit", type=int, default=50, help="depth limit for dls")

    p = sub.add_parser("compare", help="run several searches and tabulate metrics")
    _add_source_args(p)
    p.add_argument("--algos", required=True, help="comma-separated list")
    p.add_argument("--limit", type=int, default=50)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")

    p = sub.add_parser("export", help="write the reachable state space as DOT")
    _add_source_args(p)
    p.add_argument("--quotient", action="store_true", help="merge symmetric states first")
    p.add_argument("--color-orbits", action="store_true")
    p.add_argument("--out")
    return parser


def config_from_args(ns) -> RunConfig:
    if ns.command == "solve":
        algos = (ns.algo,)
    elif ns.command == "compare":
        algos = tuple(a.strip() for a in ns.algos.split(",") if a.strip())
    else:
        algos = ("bfs",)
    return RunConfig(
        domain=ns.domain, file=ns.file, n=ns.n, disks=ns.disks,
        missionaries=ns.missionaries, cannibals=ns.cannibals, init=ns.init,
        algos=algos, limit=getattr(ns, "limit", 50), sym=ns.sym,
        format=getattr(ns, "format", "csv"), out=getattr(ns, "out", None),
        cap=ns.cap, timing=ns.timing, quotient=getattr(ns, "quotient", False),
        color_orbits=getattr(ns, "color_orbits", False),
    )


COMMANDS = {"solve": solve_cmd, "compare": compare_cmd, "export": export_cmd}


def main(argv=None) -> int:
    ns = make_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[ns.command](cfg)
    except (UsageError, SearchError) as exc:
        print(f"symsearch: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
