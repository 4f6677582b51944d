"""State-space automorphisms, orbit canonicalization, quotient search and the
mirror meet-in-the-middle search.

Group elements are words over the generator list: a tuple of generator
indices applied left to right.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from .errors import InconsistentBookkeeping, InvalidSymmetry, PreconditionFailed, ResourceLimit
from .search import (
    DEFAULT_CAP,
    Outcome,
    Path,
    Problem,
    SearchMetrics,
    SearchResult,
    _Timer,
    _trace_back,
    bfs,
    default_encode,
    enumerate_reachable,
    make_path,
)


@dataclass(frozen=True)
class Automorphism:
    map_state: Callable[[Any], Any]
    map_action: Callable[[Any], Any]
    involution: bool = False
    name: str = "sigma"

    def __call__(self, state):
        return self.map_state(state)


IDENTITY = Automorphism(lambda s: s, lambda a: a, True, "identity")


def _cycle_inverse(f, x, limit=10_000):
    # f is a finite-order permutation, so iterating from x returns to x
    prev, cur = x, f(x)
    for _ in range(limit):
        if cur == x:
            return prev
        prev, cur = cur, f(cur)
    raise InconsistentBookkeeping("generator does not act as a finite-order permutation")


@dataclass(frozen=True)
class SymmetryGroup:
    generators: tuple = ()
    encode: Callable[[Any], bytes] = default_encode

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

    def apply(self, word: Sequence[int], state):
        for i in word:
            state = self.generators[i].map_state(state)
        return state

    def apply_action(self, word: Sequence[int], action):
        for i in word:
            action = self.generators[i].map_action(action)
        return action

    def apply_inverse(self, word: Sequence[int], state):
        for i in reversed(word):
            g = self.generators[i]
            state = g.map_state(state) if g.involution else _cycle_inverse(g.map_state, state)
        return state

    def apply_inverse_action(self, word: Sequence[int], action):
        for i in reversed(word):
            g = self.generators[i]
            action = g.map_action(action) if g.involution else _cycle_inverse(g.map_action, action)
        return action

    def orbit_words(self, state) -> dict:
        """Map each orbit member's encoding to ``(member, shortest word)``."""
        enc = self.encode
        found = {enc(state): (state, ())}
        queue = deque([(state, ())])
        while queue:
            s, word = queue.popleft()
            for i, g in enumerate(self.generators):
                t = g.map_state(s)
                k = enc(t)
                if k not in found:
                    found[k] = (t, word + (i,))
                    queue.append((t, word + (i,)))
        return found

    def canonicalize(self, state):
        """Return ``(representative, word)`` with ``apply(word, state) == representative``."""
        members = self.orbit_words(state)
        return members[min(members)]


def orbit(s, group: SymmetryGroup) -> set:
    return {member for member, _ in group.orbit_words(s).values()}


def canonical(s, group: SymmetryGroup):
    """Orbit member with the lexicographically smallest encoding."""
    return group.canonicalize(s)[0]


@dataclass(frozen=True)
class AutomorphismReport:
    ok: bool
    states_checked: int
    counterexample: Optional[tuple] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _closure(problem: Problem, sigma: Automorphism, cap: int):
    """States reachable from the orbit of the initial state under ``sigma``.

    A genuine symmetry maps this set onto itself even when the states
    reachable from the initial state alone are not closed under it.
    """
    enc = problem.encode
    seeds = [problem.initial]
    s = sigma(problem.initial)
    while enc(s) != enc(problem.initial) and len(seeds) < cap:
        seeds.append(s)
        s = sigma(s)
    seen, order = set(), []
    for seed in seeds:
        if enc(seed) in seen:
            continue
        _, part = enumerate_reachable(problem.with_initial(seed), cap)
        for t in part:
            k = enc(t)
            if k not in seen:
                seen.add(k)
                order.append(t)
        if len(order) > cap:
            raise ResourceLimit(cap)
    return len(order), order


def check_automorphism(problem: Problem, sigma: Automorphism, goal_closure: bool = True,
                       cap: int = DEFAULT_CAP) -> AutomorphismReport:
    """Exhaustively verify that ``sigma`` is a symmetry of the reachable space.

    The checked set is everything reachable from the initial state and its
    images under ``sigma``.  Checks bijectivity on that set, commutation with
    the successor function, step-cost preservation, the involution claim
    and, when ``goal_closure`` is set, that goals map to goals and back.
    The counterexample is ``(state, action_or_None, image)``.
    """
    enc = problem.encode
    render = problem.render_state
    count, reachable = _closure(problem, sigma, cap)
    keys = {enc(s) for s in reachable}
    images = set()

    def fail(i, s, a, image, why):
        return AutomorphismReport(False, i, (s, a, image), why)

    for i, s in enumerate(reachable, 1):
        img = sigma.map_state(s)
        k = enc(img)
        if k not in keys:
            return fail(i, s, None, img, f"image {render(img)} of {render(s)} is not a reachable state")
        if k in images:
            return fail(i, s, None, img, f"two states map to {render(img)}")
        images.add(k)
        if sigma.involution and enc(sigma.map_state(img)) != enc(s):
            return fail(i, s, None, img, f"claimed involution but sigma(sigma({render(s)})) != {render(s)}")
        if goal_closure and problem.goal_test(s) != problem.goal_test(img):
            return fail(i, s, None, img, f"goal status differs between {render(s)} and {render(img)}")
        img_actions = list(problem.actions(img))
        for a in problem.actions(s):
            sa = sigma.map_action(a)
            if sa not in img_actions:
                return fail(i, s, a, img, f"{problem.render_action(sa)} not applicable in {render(img)}")
            t = problem.result(s, a)
            lhs = sigma.map_state(t)
            rhs = problem.result(img, sa)
            if enc(lhs) != enc(rhs):
                return fail(i, s, a, img, f"sigma(result) = {render(lhs)} but result(sigma) = {render(rhs)}")
            if Fraction(problem.step_cost(s, a, t)) != Fraction(problem.step_cost(img, sa, rhs)):
                return fail(i, s, a, img, "step cost not preserved")
            if sigma.involution and sigma.map_action(sa) != a:
                return fail(i, s, a, img, f"claimed involution but action {problem.render_action(a)} does not return")
    return AutomorphismReport(True, count)


class QuotientBookkeeping:
    """Group word used to re-canonicalize each quotient edge.

    Filled as the quotient problem's result function runs; missing entries
    are recomputed on demand, so lookups never depend on search order.
    """

    def __init__(self, base: Problem, group: SymmetryGroup):
        self.base = base
        self.group = group
        self.initial_word = group.canonicalize(base.initial)[1]
        self.edges: dict = {}

    def record(self, q, a):
        key = (self.base.encode(q), a)
        if key not in self.edges:
            t = self.base.result(q, a)
            rep, word = self.group.canonicalize(t)
            self.edges[key] = (rep, word)
        return self.edges[key]

    def element(self, q, a) -> tuple:
        return self.record(q, a)[1]


def quotient(problem: Problem, group: SymmetryGroup, cap: int = DEFAULT_CAP):
    """Search problem over canonical orbit representatives.

    Every generator must be a goal-preserving automorphism.  Returns the
    quotient problem and its :class:`QuotientBookkeeping`.
    """
    if group.encode is not problem.encode:
        group = replace(group, encode=problem.encode)
    for g in group.generators:
        report = check_automorphism(problem, g, goal_closure=True, cap=cap)
        if not report:
            raise InvalidSymmetry(g.name, report)
    bk = QuotientBookkeeping(problem, group)

    def result(q, a):
        return bk.record(q, a)[0]

    def step_cost(x, a, y):
        return problem.step_cost(x, a, problem.result(x, a))

    goals = None
    if problem.goals is not None:
        reps = {}
        for g in problem.goals:
            rep = group.canonicalize(g)[0]
            reps.setdefault(problem.encode(rep), rep)
        goals = tuple(reps.values())

    qp = replace(
        problem,
        initial=group.canonicalize(problem.initial)[0],
        result=result,
        step_cost=step_cost,
        inverse=lambda a: None,
        goals=goals,
        name=f"quotient({problem.name})",
    )
    return qp, bk


def lift_path(qpath: Path, bk: QuotientBookkeeping) -> Path:
    """Turn a quotient-space path into a concrete base-space path."""
    base, group = bk.base, bk.group
    enc = base.encode
    x = base.initial
    word = bk.initial_word
    if enc(group.apply(word, x)) != enc(qpath.start):
        raise InconsistentBookkeeping("quotient path does not start at the canonical initial state")
    q = qpath.start
    steps = []
    for i, (a, q_next) in enumerate(qpath.steps, 1):
        b = group.apply_inverse_action(word, a)
        if b not in list(base.actions(x)):
            raise InconsistentBookkeeping(f"step {i}: lifted action {base.render_action(b)} not applicable")
        x = base.result(x, b)
        word = word + bk.element(q, a)
        if enc(group.apply(word, x)) != enc(q_next):
            raise InconsistentBookkeeping(f"step {i}: lifted state does not map onto quotient state")
        steps.append((b, x))
        q = q_next
    return make_path(base, base.initial, steps)


def quotient_bfs(problem: Problem, group: SymmetryGroup, cap: int = DEFAULT_CAP) -> SearchResult:
    """BFS in the quotient space; the returned path is lifted to the base problem."""
    qp, bk = quotient(problem, group, cap)
    res = bfs(qp, cap)
    if res.found:
        res.path = lift_path(res.path, bk)
    return res


def mirror_meet(problem: Problem, sigma: Automorphism, cap: int = DEFAULT_CAP) -> SearchResult:
    """Forward breadth-first search that meets its own mirror image.

    ``sigma`` must be an involutive symmetry with ``sigma(initial)`` a goal.
    Whenever a state ``s`` is generated while ``sigma(s)`` is already known,
    the path to ``s`` is joined with the mirrored, reversed and inverted path
    to ``sigma(s)``, which ends in ``sigma(initial)``.  Searching by layers
    until twice the depth reaches the best joined length keeps the result
    shortest for unit costs.  Searching backward from the goal is the same
    call on the reversed problem.
    """
    enc = problem.encode
    start = problem.initial
    if not sigma.involution or enc(sigma(sigma(start))) != enc(start):
        raise PreconditionFailed(f"{sigma.name} is not an involution")
    mirror_goal = sigma(start)
    if not problem.goal_test(mirror_goal):
        raise PreconditionFailed(
            f"{sigma.name}(initial) = {problem.render_state(mirror_goal)} is not a goal state")

    def inverse_of(a):
        b = problem.inverse(a)
        if b is None:
            raise PreconditionFailed(f"action {problem.render_action(a)} has no inverse")
        return b

    m = SearchMetrics()
    with _Timer(m):
        if problem.goal_test(start):
            return SearchResult(Outcome.FOUND, m, Path(start))
        k0 = enc(start)
        parents = {k0: None}
        dist = {k0: 0}
        layer = [(k0, start)]
        depth = 0
        best = None  # (length, key_s, key_mirror) or (length, goal_key, None)
        k_mirror = enc(mirror_goal)
        if k_mirror == k0:
            best = (0, k0, None)
        m.max_frontier = 1
        while layer and (best is None or 2 * depth < best[0]):
            nxt = []
            for key, s in layer:
                m.nodes_expanded += 1
                for a in problem.actions(s):
                    inverse_of(a)
                    t = problem.result(s, a)
                    m.nodes_generated += 1
                    kt = enc(t)
                    if kt in parents:
                        continue
                    parents[kt] = (key, a, t)
                    dist[kt] = depth + 1
                    if len(parents) > cap:
                        raise ResourceLimit(cap)
                    if problem.goal_test(t):
                        best = (depth + 1, kt, None)
                        break
                    st = sigma(t)
                    if enc(sigma(st)) != kt:
                        raise PreconditionFailed(f"{sigma.name} is not an involution on {problem.render_state(t)}")
                    ks = enc(st)
                    if ks in dist:
                        length = depth + 1 + dist[ks]
                        if best is None or length < best[0]:
                            best = (length, kt, ks)
                    nxt.append((kt, t))
                else:
                    continue
                break
            if best is not None and best[2] is None and best[0] == depth + 1:
                break  # direct goal hit at the shallowest possible depth
            layer = nxt
            depth += 1
            m.max_frontier = max(m.max_frontier, len(layer))
        if best is None:
            return SearchResult(Outcome.NO_SOLUTION, m)
        _, ks, kq = best
        steps = _trace_back(parents, ks)
        if kq is not None:
            # q: initial -> sigma(s); its mirror runs sigma(initial) -> s, so
            # walk it backwards with inverted mirrored actions: s -> sigma(initial)
            q = _trace_back(parents, kq)
            q_states = [start] + [st for _, st in q]
            for i in range(len(q) - 1, -1, -1):
                a = q[i][0]
                steps.append((inverse_of(sigma.map_action(a)), sigma(q_states[i])))
    return SearchResult(Outcome.FOUND, m, make_path(problem, start, steps))
