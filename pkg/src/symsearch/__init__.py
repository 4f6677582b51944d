"""Uninformed state-space search with symmetry reduction."""

from .agent import AgentConfig, AgentMemory, Environment, EpisodeTrace, NOOP, agent_step, run_episode
from .domains import (
    BeliefState,
    HanoiMove,
    HanoiState,
    MCMove,
    MCState,
    VacuumState,
    belief_wrap,
    make_hanoi,
    make_mc,
    make_vacuum,
    sensorless_vacuum,
    shipped_mirror,
)
from .explicit import ExplicitProblem, parse_problem_file, render_problem_file
from .export import export_dot, write_metrics
from .search import (
    Outcome,
    Path,
    Problem,
    SearchMetrics,
    SearchResult,
    bfs,
    bidirectional_bfs,
    depth_limited,
    enumerate_reachable,
    uniform_cost,
    validate_path,
)
from .symmetry import (
    Automorphism,
    SymmetryGroup,
    canonical,
    check_automorphism,
    lift_path,
    mirror_meet,
    orbit,
    quotient,
    quotient_bfs,
)

__version__ = "0.1.0"
