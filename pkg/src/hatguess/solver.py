"""Exact q-solvability decision and randomized adversaries.

The decision procedure searches the space of table strategies directly:
branch on which vertex covers the first uncovered coloring.  It is sound
and complete within its node/time budget; budget exhaustion is reported as
a timeout, never as a verdict.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import core
from .errors import ParameterError, StrategyMismatchError
from .graphs import SightGraph
from .strategies import Coloring, TableStrategy

DEFAULT_NODE_BUDGET = 10**8
DEFAULT_TIME_BUDGET = 60.0
DEFAULT_SPACE_BUDGET = 2**24


@dataclass(frozen=True)
class SolveVerdict:
    outcome: str  # "solvable" | "unsolvable" | "timeout"
    witness: TableStrategy | None
    nodes: int
    ms: float

    @property
    def solvable(self) -> bool:
        return self.outcome == "solvable"


def decide_solvable(
    g: SightGraph,
    q: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: float | None = DEFAULT_TIME_BUDGET,
    space_budget: int = DEFAULT_SPACE_BUDGET,
) -> SolveVerdict:
    """Decide whether some table strategy wins with q colors.

    Exhausts the strategy space by repeatedly covering the uncovered
    coloring with the fewest free table cells (see the kernel); a returned
    witness always re-verifies.
    """
    if q < 1:
        raise ParameterError("need q >= 1")
    started = time.monotonic()
    if q**g.n > space_budget:
        return SolveVerdict("timeout", None, 0, 0.0)
    status, tables, nodes = core.kernels.solve_tables(
        g.n, q, g.sees, node_budget, time_budget if time_budget is not None else 0
    )
    ms = (time.monotonic() - started) * 1000.0
    if status == core.FOUND:
        witness = TableStrategy(q, g.sees, tuple(tuple(t) for t in tables))
        return SolveVerdict("solvable", witness, nodes, ms)
    if status == core.EXHAUSTED:
        return SolveVerdict("unsolvable", None, nodes, ms)
    return SolveVerdict("timeout", None, nodes, ms)


@dataclass(frozen=True)
class HatGuessingBound:
    value: int  # largest q known solvable (exact when exact=True)
    exact: bool
    verdicts: dict[int, SolveVerdict] = field(default_factory=dict)


def hat_guessing_number(
    g: SightGraph,
    q_max: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: float | None = DEFAULT_TIME_BUDGET,
) -> HatGuessingBound:
    """Largest q <= q_max for which the graph is solvable.

    One color is always winnable.  Since solvability is downward monotone
    in q, the scan stops at the first unsolvable q; a timeout degrades the
    result to a lower bound.
    """
    if q_max < 1:
        raise ParameterError("need q_max >= 1")
    verdicts: dict[int, SolveVerdict] = {}
    value = 1
    for q in range(2, q_max + 1):
        verdict = decide_solvable(g, q, node_budget, time_budget)
        verdicts[q] = verdict
        if verdict.outcome == "solvable":
            value = q
        elif verdict.outcome == "unsolvable":
            return HatGuessingBound(value, True, verdicts)
        else:
            return HatGuessingBound(value, False, verdicts)
    return HatGuessingBound(value, True, verdicts)


def lll_bad_coloring(
    g: SightGraph,
    s: TableStrategy,
    q: int,
    seed: int = 0,
    max_iters: int = 10_000,
) -> Coloring | None:
    """Resampling search for a coloring defeating every vertex.

    Start uniformly at random; while some vertex guesses right, redraw that
    vertex and everything it sees.  Existence is guaranteed (and the walk
    converges fast) once q is at least e times the maximum degree; outside
    that regime None after max_iters is a legitimate outcome.
    """
    if s.q != q or not s.matches(g):
        raise StrategyMismatchError("strategy does not fit the graph")
    rng = random.Random(seed)
    x = [rng.randrange(q) for _ in range(g.n)]
    for _ in range(max_iters):
        offender = None
        for v in range(g.n):
            if s.guess_on(x, v) == x[v]:
                offender = v
                break
        if offender is None:
            return tuple(x)
        x[offender] = rng.randrange(q)
        for u in g.sees[offender]:
            x[u] = rng.randrange(q)
    return None


@dataclass(frozen=True)
class RobustOutcome:
    status: str  # "found" | "none" | "timeout"
    assignment: dict[int, int] | None


def robust_bad_coloring(
    g: SightGraph,
    s: TableStrategy,
    k: int,
    q_low: int,
    q_high: int,
    seed: int = 0,
    random_tries: int = 1000,
    op_budget: int = 10**8,
) -> RobustOutcome:
    """Color the low-degree vertices (degree <= k) from the large palette
    so that every one of them guesses wrong no matter how the high-degree
    vertices are colored from the small palette.

    The strategy s (tables over q_high colors) fixes the low-degree
    vertices' guesses.  Random seeded candidates first, then an exhaustive
    lexicographic scan; "none" only after exhaustion.
    """
    if s.q != q_high or not s.matches(g):
        raise StrategyMismatchError("strategy tables must use the large palette")
    if q_low > q_high:
        raise ParameterError("the small palette cannot exceed the large one")
    low = [v for v in range(g.n) if g.degree(v) <= k]
    high = [v for v in range(g.n) if g.degree(v) > k]
    if not low:
        return RobustOutcome("found", {})
    x = [0] * g.n
    ops = 0

    def defeats(candidate) -> bool:
        nonlocal ops
        for v, c in zip(low, candidate):
            x[v] = c
        for rank in range(q_low ** len(high)):
            rest = rank
            for v in reversed(high):
                rest, x[v] = divmod(rest, q_low)
            ops += 1
            if any(s.guess_on(x, v) == x[v] for v in low):
                return False
        return True

    rng = random.Random(seed)
    for _ in range(random_tries):
        if ops > op_budget:
            return RobustOutcome("timeout", None)
        candidate = tuple(rng.randrange(q_high) for _ in low)
        if defeats(candidate):
            return RobustOutcome("found", dict(zip(low, candidate)))
    total = q_high ** len(low)
    for rank in range(total):
        if ops > op_budget:
            return RobustOutcome("timeout", None)
        candidate = []
        rest = rank
        for _ in low:
            rest, c = divmod(rest, q_high)
            candidate.append(c)
        candidate.reverse()
        if defeats(candidate):
            return RobustOutcome("found", dict(zip(low, candidate)))
    return RobustOutcome("none", None)
