"""Line-oriented explicit transition-system files.

Grammar, one directive per line, ``#`` to end of line is a comment::

    state <name>
    init <name>
    goal <name>
    edge <from> <label> <to> <cost>
    sym <symname> <a>-><b> [<a2>-><b2> ...]
    symact <symname> <l1>-><l2> [...]

Names match ``[A-Za-z0-9_,()-]+``.  Costs are non-negative integers or
``p/q`` rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ParseError, SemanticError
from .search import Problem
from .symmetry import Automorphism, SymmetryGroup

NAME_RE = re.compile(r"[A-Za-z0-9_,()-]+\Z")
COST_RE = re.compile(r"(\d+)(?:/(\d+))?\Z")
ARROW = "->"


@dataclass(frozen=True)
class Edge:
    src: str
    label: str
    dst: str
    cost: Fraction


@dataclass(frozen=True)
class SymDecl:
    name: str
    state_map: tuple  # ((a, b), ...) as written
    action_map: tuple = ()


@dataclass(frozen=True)
class ExplicitProblem:
    states: tuple
    init: str
    goals: tuple
    edges: tuple
    syms: tuple = ()

    def sym(self, name: str) -> SymDecl:
        for s in self.syms:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_problem(self) -> Problem:
        out: dict = {s: [] for s in self.states}
        table = {}
        for e in self.edges:
            out[e.src].append(e.label)
            table[(e.src, e.label)] = e
        edge_set = {(e.src, e.label, e.dst, e.cost) for e in self.edges}
        invertible = {}
        for e in self.edges:
            rev = (e.dst, e.label, e.src, e.cost) in edge_set
            invertible[e.label] = invertible.get(e.label, True) and rev
        goals = frozenset(self.goals)

        def actions(s):
            return list(out[s])

        def result(s, a):
            return table[(s, a)].dst

        def step_cost(x, a, y):
            return table[(x, a)].cost

        def inverse(a):
            return a if invertible.get(a) else None

        return Problem(
            initial=self.init,
            actions=actions,
            result=result,
            goal_test=goals.__contains__,
            step_cost=step_cost,
            inverse=inverse,
            goals=tuple(self.goals),
            parse_state=self._parse_state,
            name="explicit",
        )

    def _parse_state(self, text):
        if text not in self.states:
            raise SemanticError(0, text, "undeclared state")
        return text

    def automorphism(self, name: str) -> Automorphism:
        decl = self.sym(name)
        smap = dict(decl.state_map)
        amap = dict(decl.action_map)
        involution = all(smap.get(b, b) == a for a, b in decl.state_map) and all(
            amap.get(b, b) == a for a, b in decl.action_map
        )
        return Automorphism(lambda s: smap.get(s, s), lambda a: amap.get(a, a), involution, name)

    def group(self, names: Optional[list] = None) -> SymmetryGroup:
        names = [s.name for s in self.syms] if names is None else names
        return SymmetryGroup(tuple(self.automorphism(n) for n in names))


def _name(tok: str, lineno: int, what: str) -> str:
    if not NAME_RE.match(tok):
        raise ParseError(lineno, tok, f"invalid {what} name")
    return tok


def _cost(tok: str, lineno: int) -> Fraction:
    m = COST_RE.match(tok)
    if not m:
        raise ParseError(lineno, tok, "cost must be a non-negative integer or p/q")
    if m.group(2) is not None and int(m.group(2)) == 0:
        raise ParseError(lineno, tok, "zero denominator")
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


def _pairs(tokens, lineno: int, what: str) -> list:
    if not tokens:
        raise ParseError(lineno, "", f"expected at least one {what} mapping a->b")
    pairs = []
    for tok in tokens:
        a, sep, b = tok.partition(ARROW)
        if not sep:
            raise ParseError(lineno, tok, f"expected {what} mapping a->b")
        pairs.append((_name(a, lineno, what), _name(b, lineno, what)))
    return pairs


ARITY = {"state": 1, "init": 1, "goal": 1, "edge": 4}


def parse_problem_file(text) -> ExplicitProblem:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(text[: exc.start].count(b"\n") + 1, "", "invalid UTF-8") from None

    states: dict = {}  # name -> line
    init = None
    goals: dict = {}
    edges = []  # (Edge, line)
    syms: dict = {}  # name -> [state_pairs, action_pairs, line]
    refs = []  # (name, line) that must be declared states

    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        kw, args = tokens[0], tokens[1:]
        if kw in ARITY:
            if len(args) != ARITY[kw]:
                tok = args[ARITY[kw]] if len(args) > ARITY[kw] else kw
                raise ParseError(lineno, tok, f"{kw} takes {ARITY[kw]} argument(s), got {len(args)}")
        elif kw in ("sym", "symact"):
            if not args:
                raise ParseError(lineno, kw, f"{kw} needs a symmetry name")
        else:
            raise ParseError(lineno, kw, "unknown directive")

        if kw == "state":
            name = _name(args[0], lineno, "state")
            if name in states:
                raise SemanticError(lineno, name, "state declared twice")
            states[name] = lineno
        elif kw == "init":
            name = _name(args[0], lineno, "state")
            if init is not None:
                raise SemanticError(lineno, name, "duplicate init")
            init = (name, lineno)
            refs.append((name, lineno))
        elif kw == "goal":
            name = _name(args[0], lineno, "state")
            if name in goals:
                raise SemanticError(lineno, name, "goal declared twice")
            goals[name] = lineno
            refs.append((name, lineno))
        elif kw == "edge":
            src = _name(args[0], lineno, "state")
            label = _name(args[1], lineno, "action")
            dst = _name(args[2], lineno, "state")
            cost = _cost(args[3], lineno)
            edges.append((Edge(src, label, dst, cost), lineno))
            refs += [(src, lineno), (dst, lineno)]
        elif kw == "sym":
            name = _name(args[0], lineno, "symmetry")
            if name in syms:
                raise SemanticError(lineno, name, "symmetry declared twice")
            pairs = _pairs(args[1:], lineno, "state")
            syms[name] = [pairs, [], lineno]
            refs += [(n, lineno) for p in pairs for n in p]
        else:
            name = _name(args[0], lineno, "symmetry")
            pairs = _pairs(args[1:], lineno, "action")
            if name not in syms:
                raise SemanticError(lineno, name, "symact for undeclared symmetry")
            syms[name][1].extend(pairs)
            syms[name].append(lineno)

    if init is None:
        raise SemanticError(len(text.splitlines()) or 1, "", "missing init")
    if not goals:
        raise SemanticError(len(text.splitlines()) or 1, "", "at least one goal is required")
    for name, lineno in refs:
        if name not in states:
            raise SemanticError(lineno, name, "undeclared state")
    seen = {}
    for e, lineno in edges:
        if (e.src, e.label) in seen and seen[(e.src, e.label)] != e.dst:
            raise SemanticError(lineno, e.label, f"label {e.label} leads to two states from {e.src}")
        seen[(e.src, e.label)] = e.dst
    decls = []
    for name, (spairs, apairs, lineno, *act_lines) in syms.items():
        for pairs, line, what in ((spairs, lineno, "state"), (apairs, act_lines[-1] if act_lines else lineno, "action")):
            _check_bijective(pairs, line, name, what)
        decls.append(SymDecl(name, tuple(spairs), tuple(apairs)))
    return ExplicitProblem(
        states=tuple(states),
        init=init[0],
        goals=tuple(goals),
        edges=tuple(e for e, _ in edges),
        syms=tuple(decls),
    )


def _check_bijective(pairs, lineno, name, what):
    mapping = {}
    for a, b in pairs:
        if a in mapping and mapping[a] != b:
            raise SemanticError(lineno, a, f"sym {name} maps {what} {a} twice")
        mapping[a] = b
    # unlisted names map to themselves, so the map is a bijection exactly
    # when the listed sources and targets coincide as sets
    targets = list(mapping.values())
    if len(set(targets)) != len(targets) or set(targets) != set(mapping):
        raise SemanticError(lineno, name, f"sym {name} is not a bijection on {what}s")


def _fmt_cost(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_problem_file(ep: ExplicitProblem) -> str:
    lines = [f"state {s}" for s in ep.states]
    lines.append(f"init {ep.init}")
    lines += [f"goal {g}" for g in ep.goals]
    lines += [f"edge {e.src} {e.label} {e.dst} {_fmt_cost(e.cost)}" for e in ep.edges]
    for s in ep.syms:
        lines.append(f"sym {s.name} " + " ".join(f"{a}{ARROW}{b}" for a, b in s.state_map))
        if s.action_map:
            lines.append(f"symact {s.name} " + " ".join(f"{a}{ARROW}{b}" for a, b in s.action_map))
    return "\n".join(lines) + "\n"


def load_problem_file(path) -> ExplicitProblem:
    with open(path, "rb") as fh:
        return parse_problem_file(fh.read())
