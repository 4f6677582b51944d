"""Problem model and the uninformed baseline searches.

A :class:`Problem` bundles the five components (initial state, actions,
transition result, goal test, step cost) plus optional action inverses and a
finite goal enumeration used by backward search.  All searches are graph
searches keyed by the state's canonical byte encoding and report effort
counters in :class:`SearchMetrics`.
"""

from __future__ import annotations

import enum
import heapq
import time
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

from .errors import NoGoalEnumeration, NotInvertible, ResourceLimit

State = Hashable
Action = Hashable

DEFAULT_CAP = 10**6


def default_encode(state) -> bytes:
    if isinstance(state, bytes):
        return state
    if isinstance(state, str):
        return state.encode("utf-8")
    return state.encode()


def unit_cost(x, a, y) -> int:
    return 1


def no_inverse(a):
    return None


@dataclass(frozen=True)
class Problem:
    initial: Any
    actions: Callable[[Any], Sequence[Any]]
    result: Callable[[Any, Any], Any]
    goal_test: Callable[[Any], bool]
    step_cost: Callable[[Any, Any, Any], Any] = unit_cost
    inverse: Callable[[Any], Optional[Any]] = no_inverse
    goals: Optional[tuple] = None
    encode: Callable[[Any], bytes] = default_encode
    render_state: Callable[[Any], str] = str
    render_action: Callable[[Any], str] = str
    parse_state: Optional[Callable[[str], Any]] = None
    name: str = "problem"

    def successors(self, state):
        """Yield ``(action, next_state)`` pairs in declared action order."""
        for a in self.actions(state):
            yield a, self.result(state, a)

    def with_initial(self, state) -> "Problem":
        return replace(self, initial=state)


@dataclass(frozen=True)
class Path:
    start: Any
    steps: tuple = ()
    total_cost: Fraction = Fraction(0)

    @property
    def actions(self) -> list:
        return [a for a, _ in self.steps]

    @property
    def states(self) -> list:
        return [self.start] + [s for _, s in self.steps]

    @property
    def end(self):
        return self.steps[-1][1] if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)


def make_path(problem: Problem, start, steps: Iterable) -> Path:
    """Build a :class:`Path`, summing step costs exactly."""
    steps = tuple(steps)
    total = Fraction(0)
    prev = start
    for a, s in steps:
        total += Fraction(problem.step_cost(prev, a, s))
        prev = s
    return Path(start, steps, total)


@dataclass
class SearchMetrics:
    nodes_expanded: int = 0
    nodes_generated: int = 0
    max_frontier: int = 0
    wall_time: float = 0.0

    def counters(self) -> tuple:
        return (self.nodes_expanded, self.nodes_generated, self.max_frontier)


class Outcome(enum.Enum):
    FOUND = "Found"
    NO_SOLUTION = "NoSolution"
    CUTOFF = "Cutoff"
    # only produced by the comparison harness when a precondition fails
    INAPPLICABLE = "Inapplicable"


@dataclass
class SearchResult:
    outcome: Outcome
    metrics: SearchMetrics = field(default_factory=SearchMetrics)
    path: Optional[Path] = None
    note: str = ""

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


class _Timer:
    def __init__(self, metrics: SearchMetrics):
        self.metrics = metrics

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.metrics.wall_time = time.perf_counter() - self._t0
        return False


def _trace_back(parents: dict, key) -> list:
    steps = []
    while parents[key] is not None:
        parent_key, action, state = parents[key]
        steps.append((action, state))
        key = parent_key
    steps.reverse()
    return steps


def bfs(problem: Problem, cap: int = DEFAULT_CAP) -> SearchResult:
    """Breadth-first graph search; the goal test is applied on generation.

    Returns a path with the fewest actions.
    """
    m = SearchMetrics()
    enc = problem.encode
    with _Timer(m):
        start = problem.initial
        if problem.goal_test(start):
            return SearchResult(Outcome.FOUND, m, Path(start))
        k0 = enc(start)
        parents = {k0: None}
        frontier = deque([(k0, start)])
        m.max_frontier = 1
        while frontier:
            key, s = frontier.popleft()
            m.nodes_expanded += 1
            for a in problem.actions(s):
                t = problem.result(s, a)
                m.nodes_generated += 1
                kt = enc(t)
                if kt in parents:
                    continue
                parents[kt] = (key, a, t)
                if problem.goal_test(t):
                    return SearchResult(Outcome.FOUND, m, make_path(problem, start, _trace_back(parents, kt)))
                if len(parents) > cap:
                    raise ResourceLimit(cap)
                frontier.append((kt, t))
            m.max_frontier = max(m.max_frontier, len(frontier))
    return SearchResult(Outcome.NO_SOLUTION, m)


def uniform_cost(problem: Problem, cap: int = DEFAULT_CAP) -> SearchResult:
    """Uniform-cost graph search with ties broken by state encoding."""
    m = SearchMetrics()
    enc = problem.encode
    with _Timer(m):
        start = problem.initial
        k0 = enc(start)
        best = {k0: Fraction(0)}
        parents = {k0: None}
        heap = [(Fraction(0), k0, start)]
        explored = set()
        m.max_frontier = 1
        while heap:
            g, key, s = heapq.heappop(heap)
            if key in explored:
                continue
            if problem.goal_test(s):
                return SearchResult(Outcome.FOUND, m, make_path(problem, start, _trace_back(parents, key)))
            explored.add(key)
            m.nodes_expanded += 1
            for a in problem.actions(s):
                t = problem.result(s, a)
                m.nodes_generated += 1
                kt = enc(t)
                if kt in explored:
                    continue
                g2 = g + Fraction(problem.step_cost(s, a, t))
                if kt not in best or g2 < best[kt]:
                    best[kt] = g2
                    parents[kt] = (key, a, t)
                    heapq.heappush(heap, (g2, kt, t))
                    if len(best) > cap:
                        raise ResourceLimit(cap)
            m.max_frontier = max(m.max_frontier, len(heap))
    return SearchResult(Outcome.NO_SOLUTION, m)


def depth_limited(problem: Problem, limit: int, cap: int = DEFAULT_CAP) -> SearchResult:
    """Depth-first search bounded at ``limit`` actions.

    A state is re-expanded only when reached at a strictly shallower depth
    than before, which keeps the search complete up to the limit.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    m = SearchMetrics()
    enc = problem.encode
    with _Timer(m):
        start = problem.initial
        shallowest: dict = {}
        cut = False
        # entries: (state, key, depth, link) where link = (parent_link, action, state)
        stack = [(start, enc(start), 0, None)]
        m.max_frontier = 1
        while stack:
            s, key, depth, link = stack.pop()
            if problem.goal_test(s):
                steps = []
                while link is not None:
                    link, a, st = link
                    steps.append((a, st))
                steps.reverse()
                return SearchResult(Outcome.FOUND, m, make_path(problem, start, steps))
            if shallowest.get(key, limit + 1) <= depth:
                continue
            shallowest[key] = depth
            if len(shallowest) > cap:
                raise ResourceLimit(cap)
            acts = list(problem.actions(s))
            if depth == limit:
                if acts:
                    cut = True
                continue
            m.nodes_expanded += 1
            children = []
            for a in acts:
                t = problem.result(s, a)
                m.nodes_generated += 1
                children.append((t, enc(t), depth + 1, (link, a, t)))
            stack.extend(reversed(children))
            m.max_frontier = max(m.max_frontier, len(stack))
    return SearchResult(Outcome.CUTOFF if cut else Outcome.NO_SOLUTION, m)


def bidirectional_bfs(problem: Problem, cap: int = DEFAULT_CAP) -> SearchResult:
    """Layered bidirectional breadth-first search for unit-cost problems.

    The backward frontier is seeded from ``problem.goals`` and walks edges
    through declared action inverses.  Whole layers are expanded, always on
    the side with the smaller frontier, and the search stops once the sum of
    the two frontier depths reaches the best meeting length found.
    """
    if problem.goals is None:
        raise NoGoalEnumeration("bidirectional search needs an enumerated goal set")
    m = SearchMetrics()
    enc = problem.encode

    def inverse_of(a):
        b = problem.inverse(a)
        if b is None:
            raise NotInvertible(problem.render_action(a))
        return b

    with _Timer(m):
        start = problem.initial
        if problem.goal_test(start):
            return SearchResult(Outcome.FOUND, m, Path(start))
        k0 = enc(start)
        # forward: key -> (parent_key, action, state); backward: key -> (child_key, forward_action, state)
        fwd = {k0: None}
        bwd = {}
        fdist = {k0: 0}
        bdist = {}
        states = {k0: start}
        f_layer = [k0]
        b_layer = []
        for g in problem.goals:
            kg = enc(g)
            if kg not in bwd:
                bwd[kg] = None
                bdist[kg] = 0
                states[kg] = g
                b_layer.append(kg)
        if not b_layer:
            return SearchResult(Outcome.NO_SOLUTION, m)
        depth_f = depth_b = 0
        best = None  # (length, meet_key)
        m.max_frontier = len(f_layer) + len(b_layer)
        while f_layer and b_layer:
            if len(f_layer) <= len(b_layer):
                nxt = []
                for key in f_layer:
                    s = states[key]
                    m.nodes_expanded += 1
                    for a in problem.actions(s):
                        inverse_of(a)
                        t = problem.result(s, a)
                        m.nodes_generated += 1
                        kt = enc(t)
                        if kt in fwd:
                            continue
                        fwd[kt] = (key, a, t)
                        fdist[kt] = depth_f + 1
                        states[kt] = t
                        nxt.append(kt)
                        if kt in bdist:
                            length = depth_f + 1 + bdist[kt]
                            if best is None or length < best[0]:
                                best = (length, kt)
                f_layer = nxt
                depth_f += 1
            else:
                nxt = []
                for key in b_layer:
                    t = states[key]
                    m.nodes_expanded += 1
                    for b in problem.actions(t):
                        a = inverse_of(b)
                        s = problem.result(t, b)
                        m.nodes_generated += 1
                        ks = enc(s)
                        if ks in bwd:
                            continue
                        bwd[ks] = (key, a, t)
                        bdist[ks] = depth_b + 1
                        states[ks] = s
                        nxt.append(ks)
                        if ks in fdist:
                            length = depth_b + 1 + fdist[ks]
                            if best is None or length < best[0]:
                                best = (length, ks)
                b_layer = nxt
                depth_b += 1
            if len(states) > cap:
                raise ResourceLimit(cap)
            m.max_frontier = max(m.max_frontier, len(f_layer) + len(b_layer))
            if best is not None and depth_f + depth_b >= best[0]:
                break
        if best is None:
            return SearchResult(Outcome.NO_SOLUTION, m)
        meet = best[1]
        steps = _trace_back(fwd, meet)
        key = meet
        while bwd[key] is not None:
            child_key, a, t = bwd[key]
            steps.append((a, t))
            key = child_key
    return SearchResult(Outcome.FOUND, m, make_path(problem, start, steps))


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_path(problem: Problem, path: Path) -> Validation:
    """Replay ``path`` against ``problem``; report the first violation."""
    enc = problem.encode
    if enc(path.start) != enc(problem.initial):
        return Validation(False, "path does not start at the initial state")
    s = path.start
    total = Fraction(0)
    for i, (a, claimed) in enumerate(path.steps, 1):
        if a not in list(problem.actions(s)):
            return Validation(False, f"step {i}: action {problem.render_action(a)} not applicable")
        t = problem.result(s, a)
        if enc(t) != enc(claimed):
            return Validation(False, f"step {i}: expected {problem.render_state(t)}, "
                                     f"path lists {problem.render_state(claimed)}")
        total += Fraction(problem.step_cost(s, a, t))
        s = t
    if not problem.goal_test(s):
        return Validation(False, f"final state {problem.render_state(s)} is not a goal")
    if total != path.total_cost:
        return Validation(False, f"total cost {path.total_cost} != step cost sum {total}")
    return Validation(True)


def enumerate_reachable(problem: Problem, cap: int = DEFAULT_CAP) -> tuple[int, list]:
    """All states reachable from the initial state, in BFS discovery order."""
    if cap <= 0:
        raise ValueError("cap must be positive")
    enc = problem.encode
    seen = {enc(problem.initial)}
    order = [problem.initial]
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        for a in problem.actions(s):
            t = problem.result(s, a)
            k = enc(t)
            if k not in seen:
                seen.add(k)
                order.append(t)
                if len(order) > cap:
                    raise ResourceLimit(cap)
    return len(order), order
