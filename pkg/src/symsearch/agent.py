"""Problem-solving agent: formulate, search once, then execute the cached plan."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

from .errors import SearchFailed, StepBudgetExceeded
from .search import Problem, SearchResult, bfs

NOOP = "NoOp"


@dataclass(frozen=True)
class AgentConfig:
    """How the agent builds and solves problems.

    ``formulate_problem(state, goal)`` returns a :class:`Problem` starting at
    ``state``; ``formulate_goal(state)`` returns a goal predicate.  When no
    goal formulator is given, the formulated problem's own goal test is used.
    """

    formulate_problem: Callable[[Any, Optional[Callable]], Problem]
    formulate_goal: Optional[Callable[[Any], Callable[[Any], bool]]] = None
    search: Callable[[Problem], SearchResult] = bfs


@dataclass(frozen=True)
class AgentMemory:
    state: Any = None
    solution: tuple = ()  # remaining (action, predicted_state) steps
    expected: Any = None  # state predicted after the last returned action
    searches: int = 0


def _goal_for(config: AgentConfig, state):
    if config.formulate_goal is not None:
        return config.formulate_goal(state)
    return config.formulate_problem(state, None).goal_test


def agent_step(percept, memory: AgentMemory, config: AgentConfig):
    """One call of the agent program; returns ``(action, new_memory)``."""
    state = percept  # full observability: the percept is the world state
    goal = _goal_for(config, state)
    if goal(state):
        return NOOP, memory
    solution = memory.solution
    if memory.expected is not None and memory.expected != state:
        solution = ()  # world diverged from the plan's prediction
    searches = memory.searches
    if not solution:
        problem = config.formulate_problem(state, goal)
        res = config.search(problem)
        searches += 1
        if not res.found:
            raise SearchFailed(f"no plan from {problem.render_state(state)}: {res.outcome.value}")
        solution = res.path.steps
    (action, predicted), rest = solution[0], solution[1:]
    return action, AgentMemory(state, rest, predicted, searches)


class Environment:
    """Simulated world holding the hidden true state."""

    def __init__(self, problem: Problem, true_state=None):
        self.problem = problem
        self.true_state = problem.initial if true_state is None else true_state

    def percept(self):
        return self.true_state

    def execute(self, action):
        prev = self.true_state
        self.true_state = self.problem.result(prev, action)
        return Fraction(self.problem.step_cost(prev, action, self.true_state))


@dataclass
class EpisodeTrace:
    steps: list = field(default_factory=list)  # (percept, action, resulting state)
    terminal: bool = False
    total_cost: Fraction = Fraction(0)

    @property
    def actions(self) -> list:
        return [a for _, a, _ in self.steps]


def run_episode(env: Environment, config: AgentConfig, max_steps: int = 1000) -> EpisodeTrace:
    if max_steps <= 0:
        raise ValueError("max_steps must be positive")
    trace = EpisodeTrace()
    memory = AgentMemory()
    while True:
        percept = env.percept()
        action, memory = agent_step(percept, memory, config)
        if action == NOOP:
            trace.terminal = True
            return trace
        if len(trace.steps) >= max_steps:
            raise StepBudgetExceeded(trace, max_steps)
        trace.total_cost += env.execute(action)
        trace.steps.append((percept, action, env.true_state))
