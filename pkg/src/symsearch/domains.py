"""The vacuum world, missionaries & cannibals, Towers of Hanoi, and the
sensorless belief-state wrapper, each with its shipped mirror symmetry."""

from __future__ import annotations

import struct
from dataclasses import dataclass, replace
from typing import NamedTuple

from .errors import EmptyBelief, InvalidParameter, UnknownDomain
from .search import Problem, default_encode
from .symmetry import Automorphism, SymmetryGroup

# ---------------------------------------------------------------- vacuum

LEFT, RIGHT, SUCK = "Left", "Right", "Suck"
VACUUM_ACTIONS = (LEFT, RIGHT, SUCK)


@dataclass(frozen=True)
class VacuumState:
    """Agent position on a line of ``len(dirt)`` squares plus dirt flags.

    Rendered as ``L,1,1`` for one or two squares (L/R is the position sign),
    and as ``0,1,1,1`` with a numeric position for longer lines.
    """

    position: int
    dirt: tuple

    def encode(self) -> bytes:
        return bytes([self.position, *map(int, self.dirt)])

    def __str__(self) -> str:
        pos = "LR"[self.position] if len(self.dirt) <= 2 else str(self.position)
        return ",".join([pos, *(str(int(d)) for d in self.dirt)])


def parse_vacuum_state(text: str, n: int | None = None) -> VacuumState:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) < 2:
        raise InvalidParameter(f"bad vacuum state {text!r}")
    pos_txt, bits = parts[0], parts[1:]
    if n is not None and len(bits) != n:
        raise InvalidParameter(f"vacuum state {text!r} needs {n} dirt flags")
    if pos_txt.upper() in ("L", "R"):
        pos = "LR".index(pos_txt.upper())
    elif pos_txt.isdigit():
        pos = int(pos_txt)
    else:
        raise InvalidParameter(f"bad vacuum position {pos_txt!r}")
    if any(b not in ("0", "1") for b in bits):
        raise InvalidParameter(f"dirt flags must be 0/1 in {text!r}")
    if not 0 <= pos < len(bits):
        raise InvalidParameter(f"position {pos} outside 0..{len(bits) - 1}")
    return VacuumState(pos, tuple(b == "1" for b in bits))


def make_vacuum(n: int = 2, init: VacuumState | None = None, boundary: str = "prune") -> Problem:
    """Vacuum world on ``n`` squares in a line.

    ``boundary="prune"`` makes Left/Right inapplicable at the ends;
    ``boundary="stay"`` turns them into self-loops, which sensorless
    planning needs (a blind agent cannot know it is already at the wall).
    """
    if n < 1:
        raise InvalidParameter("vacuum world needs n >= 1")
    if boundary not in ("prune", "stay"):
        raise InvalidParameter(f"unknown boundary mode {boundary!r}")
    if init is None:
        init = VacuumState(0, (True,) * n)
    if len(init.dirt) != n or not 0 <= init.position < n:
        raise InvalidParameter(f"initial state {init} does not fit n={n}")
    stay = boundary == "stay"

    def actions(s):
        acts = []
        if stay or s.position > 0:
            acts.append(LEFT)
        if stay or s.position < n - 1:
            acts.append(RIGHT)
        acts.append(SUCK)
        return acts

    def result(s, a):
        if a == LEFT:
            return VacuumState(max(s.position - 1, 0), s.dirt)
        if a == RIGHT:
            return VacuumState(min(s.position + 1, n - 1), s.dirt)
        if a == SUCK:
            dirt = list(s.dirt)
            dirt[s.position] = False
            return VacuumState(s.position, tuple(dirt))
        raise ValueError(f"unknown vacuum action {a!r}")

    def goal_test(s):
        return not any(s.dirt)

    goals = tuple(VacuumState(p, (False,) * n) for p in range(n))
    return Problem(
        initial=init,
        actions=actions,
        result=result,
        goal_test=goal_test,
        inverse={LEFT: RIGHT, RIGHT: LEFT}.get,
        goals=goals,
        parse_state=lambda t: parse_vacuum_state(t, n),
        name=f"vacuum(n={n})",
    )


def vacuum_mirror(n: int = 2) -> Automorphism:
    def map_state(s):
        return VacuumState(n - 1 - s.position, tuple(reversed(s.dirt)))

    return Automorphism(map_state, {LEFT: RIGHT, RIGHT: LEFT, SUCK: SUCK}.get, True, "sigma_vac")


# ---------------------------------------------------- missionaries & cannibals


class MCState(NamedTuple):
    """Missionaries and cannibals on the right bank, boat side (1 = right)."""

    m: int
    c: int
    b: int

    def encode(self) -> bytes:
        return bytes(self)

    def __str__(self) -> str:
        return f"{self.m},{self.c},{self.b}"


class MCMove(NamedTuple):
    dm: int
    dc: int
    sign: int  # -1 carries people off the right bank, +1 brings them back

    def __str__(self) -> str:
        return f"{'-' if self.sign < 0 else '+'}({self.dm},{self.dc},1)"


DEFAULT_MOVES = ((1, 0), (0, 1), (2, 0), (0, 2), (1, 1))


def parse_mc_state(text: str) -> MCState:
    try:
        m, c, b = (int(p) for p in text.split(","))
    except ValueError:
        raise InvalidParameter(f"bad missionaries/cannibals state {text!r}") from None
    return MCState(m, c, b)


def mc_valid(s, m_total: int = 3, c_total: int = 3) -> bool:
    m, c, b = s
    if not (0 <= m <= m_total and 0 <= c <= c_total and b in (0, 1)):
        return False
    lm, lc = m_total - m, c_total - c
    return (m == 0 or m >= c) and (lm == 0 or lm >= lc)


def make_mc(m_total: int = 3, c_total: int = 3, moves=DEFAULT_MOVES, init: MCState | None = None) -> Problem:
    moves = tuple(tuple(mv) for mv in moves)
    if not moves:
        raise InvalidParameter("move set must not be empty")
    if any(dm < 0 or dc < 0 or dm + dc == 0 for dm, dc in moves):
        raise InvalidParameter("every move must carry at least one person")
    init = MCState(m_total, c_total, 1) if init is None else MCState(*init)
    goal = MCState(0, 0, 0)

    def result(s, a):
        return MCState(s.m + a.sign * a.dm, s.c + a.sign * a.dc, s.b + a.sign)

    def actions(s):
        sign = -1 if s.b == 1 else 1
        out = []
        for dm, dc in moves:
            mv = MCMove(dm, dc, sign)
            if mc_valid(result(s, mv), m_total, c_total):
                out.append(mv)
        return out

    return Problem(
        initial=init,
        actions=actions,
        result=result,
        goal_test=lambda s: s == goal,
        inverse=lambda a: MCMove(a.dm, a.dc, -a.sign),
        goals=(goal,),
        parse_state=parse_mc_state,
        name=f"mc({m_total},{c_total})",
    )


def mc_mirror(m_total: int = 3, c_total: int = 3) -> Automorphism:
    return Automorphism(
        lambda s: MCState(m_total - s.m, c_total - s.c, 1 - s.b),
        lambda a: MCMove(a.dm, a.dc, -a.sign),
        True,
        "sigma_mc",
    )


def mc_role_swap() -> Automorphism:
    """Swap missionaries and cannibals; not a symmetry of the puzzle."""
    return Automorphism(
        lambda s: MCState(s.c, s.m, s.b),
        lambda a: MCMove(a.dc, a.dm, a.sign),
        True,
        "role_swap",
    )


# ---------------------------------------------------------------- hanoi

PEGS = "ABC"
# from/to order of the move table: A->B, A->C, B->A, B->C, C->A, C->B
PEG_PAIRS = tuple((f, t) for f in PEGS for t in PEGS if f != t)


class HanoiState(tuple):
    """Peg of each disk; index 0 holds disk 1 (the largest)."""

    __slots__ = ()

    def encode(self) -> bytes:
        return "".join(self).encode("ascii")

    def __str__(self) -> str:
        return ",".join(self)


class HanoiMove(NamedTuple):
    disk: int
    src: str
    dst: str

    def __str__(self) -> str:
        return f"({self.disk},{self.src},{self.dst})"


def parse_hanoi_state(text: str, d: int | None = None) -> HanoiState:
    pegs = [p.strip().upper() for p in text.split(",")]
    if any(p not in PEGS for p in pegs) or (d is not None and len(pegs) != d):
        raise InvalidParameter(f"bad hanoi state {text!r}")
    return HanoiState(pegs)


def _top_disk(s, peg):
    """Smallest disk (highest number) on ``peg``, or 0 when empty."""
    for k in range(len(s), 0, -1):
        if s[k - 1] == peg:
            return k
    return 0


def make_hanoi(d: int = 3, init: HanoiState | None = None) -> Problem:
    if d < 1:
        raise InvalidParameter("hanoi needs at least one disk")
    init = HanoiState("A" * d) if init is None else HanoiState(init)
    goal = HanoiState("C" * d)

    def actions(s):
        out = []
        for src, dst in PEG_PAIRS:
            k = _top_disk(s, src)
            if k and _top_disk(s, dst) < k:
                out.append(HanoiMove(k, src, dst))
        return out

    def result(s, a):
        if s[a.disk - 1] != a.src:
            raise ValueError(f"disk {a.disk} is not on peg {a.src}")
        pegs = list(s)
        pegs[a.disk - 1] = a.dst
        return HanoiState(pegs)

    return Problem(
        initial=init,
        actions=actions,
        result=result,
        goal_test=lambda s: s == goal,
        inverse=lambda a: HanoiMove(a.disk, a.dst, a.src),
        goals=(goal,),
        parse_state=lambda t: parse_hanoi_state(t, d),
        name=f"hanoi(d={d})",
    )


def peg_swap(p: str = "A", q: str = "C") -> Automorphism:
    """Relabel pegs ``p`` and ``q`` in states and moves."""
    table = str.maketrans(p + q, q + p)
    return Automorphism(
        lambda s: HanoiState(x.translate(table) for x in s),
        lambda a: HanoiMove(a.disk, a.src.translate(table), a.dst.translate(table)),
        True,
        f"swap_{p}{q}",
    )


def hanoi_mirror() -> Automorphism:
    return replace(peg_swap("A", "C"), name="sigma_h")


def shipped_mirror(domain: str, **params) -> Automorphism:
    if domain == "vacuum":
        return vacuum_mirror(params.get("n", 2))
    if domain == "mc":
        return mc_mirror(params.get("m_total", 3), params.get("c_total", 3))
    if domain == "hanoi":
        return hanoi_mirror()
    raise UnknownDomain(f"no shipped mirror for domain {domain!r}")


def shipped_group(domain: str, **params) -> SymmetryGroup:
    """Goal-preserving symmetries used for quotient search.

    The mc and hanoi mirrors swap initial and goal, so they cannot merge
    states; hanoi instead uses the A/B peg swap, which fixes the goal peg,
    and mc gets the trivial group.
    """
    if domain == "vacuum":
        return SymmetryGroup((vacuum_mirror(params.get("n", 2)),))
    if domain == "mc":
        return SymmetryGroup(())
    if domain == "hanoi":
        return SymmetryGroup((peg_swap("A", "B"),))
    raise UnknownDomain(f"no shipped group for domain {domain!r}")


# ---------------------------------------------------------------- beliefs


class BeliefState(tuple):
    """Non-empty set of base states, stored sorted by encoding."""

    __slots__ = ()

    def __new__(cls, members, encode=default_encode):
        uniq = {encode(s): s for s in members}
        if not uniq:
            raise EmptyBelief("belief state must contain at least one state")
        return super().__new__(cls, (uniq[k] for k in sorted(uniq)))

    def encode(self) -> bytes:
        return b"".join(struct.pack(">I", len(e)) + e for e in map(default_encode, self))

    def __str__(self) -> str:
        return "{" + ";".join(map(str, self)) + "}"


def belief_wrap(base: Problem, initial_belief) -> Problem:
    """Sensorless version of ``base``: search over sets of base states.

    An action is applicable only if every member allows it; the goal test
    requires every member to be a goal.
    """
    enc = base.encode

    def belief(members):
        return BeliefState(members, enc)

    def actions(bs):
        common = None
        for s in bs:
            acts = list(base.actions(s))
            common = acts if common is None else [a for a in common if a in acts]
        return common

    def result(bs, a):
        return belief(base.result(s, a) for s in bs)

    def step_cost(x, a, y):
        return 1

    def encode(bs):
        return b"".join(struct.pack(">I", len(e)) + e for e in map(enc, bs))

    return Problem(
        initial=belief(initial_belief),
        actions=actions,
        result=result,
        goal_test=lambda bs: all(base.goal_test(s) for s in bs),
        step_cost=step_cost,
        encode=encode,
        render_state=lambda bs: "{" + ";".join(map(base.render_state, bs)) + "}",
        render_action=base.render_action,
        name=f"belief({base.name})",
    )


def sensorless_vacuum(n: int = 2) -> Problem:
    """Blind vacuum agent starting from every possible world state."""
    base = make_vacuum(n, boundary="stay")
    everything = [
        VacuumState(p, tuple(bool(mask >> i & 1) for i in range(n)))
        for p in range(n)
        for mask in range(2**n)
    ]
    return belief_wrap(base, everything)


DOMAINS = ("vacuum", "mc", "hanoi")
