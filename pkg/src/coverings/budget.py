"""Node budgets for exhaustive searches and deterministic branch reduction."""

from dataclasses import dataclass, field
from typing import Callable, Generic, List, Optional, Sequence, TypeVar

from .parallel import ChunkExecutor

T = TypeVar("T")
R = TypeVar("R")


class BudgetExhausted(Exception):
    """Internal signal: a search spent its node budget."""

    pass


class NodeBudget:
    """
    Counts search-tree nodes against a fixed limit.

    The unit is nodes, not wall time, so results reproduce across machines.
    """

    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.spent = 0

    def spend(self) -> None:
        """Account for one node; raises BudgetExhausted past the limit."""
        self.spent += 1
        if self.spent > self.limit:
            raise BudgetExhausted()

    @property
    def remaining(self) -> int:
        """Nodes left before exhaustion."""
        return max(self.limit - self.spent, 0)


@dataclass
class BranchRun(Generic[R]):
    """Outcome of exploring one top-level branch."""

    value: Optional[R]
    nodes: int
    exhausted: bool


@dataclass
class BranchOutcome(Generic[R]):
    """Reduction of all top-level branches, in branch order."""

    values: List[R] = field(default_factory=list)
    nodes_explored: int = 0
    exhausted: bool = False
    stopped: bool = False


def run_branch(
    explore: Callable[[T, NodeBudget], R], branch: T, limit: int
) -> BranchRun[R]:
    """Explore a single branch under its own node budget."""
    budget = NodeBudget(limit)
    try:
        value = explore(branch, budget)
    except BudgetExhausted:
        return BranchRun(value=None, nodes=budget.spent, exhausted=True)
    return BranchRun(value=value, nodes=budget.spent, exhausted=False)


def explore_branches(
    branches: Sequence[T],
    explore: Callable[[T, NodeBudget], R],
    limit: int,
    executor: ChunkExecutor,
    stop: Callable[[List[R]], bool] = lambda values: False,
    root_nodes: int = 1,
) -> BranchOutcome[R]:
    """
    Explore top-level branches and reduce them as a sequential search would.

    The budget is cumulative in branch order: branch k may use whatever the
    earlier branches left. Parallel runs give every branch the full limit
    and apply the cumulative rule afterwards, which yields the same values,
    node count and exhaustion verdict as the sequential run.

    Args:
        branches: Top-level branch descriptors, in canonical order
        explore: Explores one branch, spending nodes on the budget it is given
        limit: Total node budget
        executor: Runs branches inline (one worker) or in threads
        stop: Called with the values so far; True ends the search early
        root_nodes: Nodes spent before branching

    Returns:
        BranchOutcome; when exhausted, nodes_explored equals the limit
    """
    outcome: BranchOutcome[R] = BranchOutcome(nodes_explored=root_nodes)
    if root_nodes > limit:
        return BranchOutcome(nodes_explored=limit, exhausted=True)

    if executor.max_concurrency == 1:
        runs = None
    else:
        runs = executor.map(lambda b: run_branch(explore, b, limit), branches)

    for i, branch in enumerate(branches):
        remaining = limit - outcome.nodes_explored
        if runs is None:
            run = run_branch(explore, branch, remaining)
        else:
            run = runs[i]
        if run.exhausted or run.nodes > remaining:
            outcome.exhausted = True
            outcome.nodes_explored = limit
            return outcome
        outcome.nodes_explored += run.nodes
        outcome.values.append(run.value)  # type: ignore[arg-type]
        if stop(outcome.values):
            outcome.stopped = True
            break
    return outcome
