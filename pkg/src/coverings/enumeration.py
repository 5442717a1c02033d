"""Backtracking over residue assignments for a fixed moduli set."""

from typing import Callable, List, Tuple

from .arithmetic import lcm_of, repunit_mask
from .budget import NodeBudget
from .config import DEFAULT_SIEVE_BUDGET
from .errors import SieveBudgetError
from .models import ModuliSet

Residues = Tuple[int, ...]


class ResidueBacktracker:
    """
    Assigns residues to the moduli of M in ascending-modulus order.

    Residue classes are bit masks over [0, lcm(M)). A partial assignment is
    cut as soon as its uncovered residues outnumber what the unassigned
    moduli could cover with no overlap at all. Residues are tried in
    ascending order, so complete assignments come out lexicographically.
    """

    def __init__(self, M: ModuliSet, sieve_budget: int = DEFAULT_SIEVE_BUDGET) -> None:
        self.moduli = list(M.moduli)
        self.period = lcm_of(self.moduli).value
        if self.period > sieve_budget:
            raise SieveBudgetError(self.period, sieve_budget, "enumerate residues")
        self.full = (1 << self.period) - 1
        self._masks = [repunit_mask(self.period, m) for m in self.moduli]

        k = len(self.moduli)
        self._capacity = [0] * (k + 1)
        self._tail_choices = [1] * (k + 1)
        for i in range(k - 1, -1, -1):
            self._capacity[i] = self._capacity[i + 1] + self.period // self.moduli[i]
            self._tail_choices[i] = self._tail_choices[i + 1] * self.moduli[i]

    def branches(self) -> List[int]:
        """Top-level branches: the residue of the smallest modulus."""
        return list(range(self.moduli[0]))

    def count_branch(self, first: int, budget: NodeBudget) -> int:
        """Number of coverings whose smallest-modulus residue is ``first``."""
        return self._count(1, self.full & ~(self._masks[0] << first), budget)

    def _count(self, i: int, uncovered: int, budget: NodeBudget) -> int:
        budget.spend()
        if uncovered == 0:
            # every completion of a covering prefix is a covering
            return self._tail_choices[i]
        if uncovered.bit_count() > self._capacity[i]:
            return 0
        mask = self._masks[i]
        return sum(
            self._count(i + 1, uncovered & ~(mask << r), budget)
            for r in range(self.moduli[i])
        )

    def walk_branch(
        self, first: int, budget: NodeBudget, visit: Callable[[Residues], bool]
    ) -> None:
        """
        Call ``visit`` on every covering of the branch, in lexicographic order,
        until it returns True.
        """
        self._walk(1, self.full & ~(self._masks[0] << first), (first,), budget, visit)

    def _walk(
        self,
        i: int,
        uncovered: int,
        residues: Residues,
        budget: NodeBudget,
        visit: Callable[[Residues], bool],
    ) -> bool:
        budget.spend()
        if uncovered.bit_count() > self._capacity[i]:
            return False
        if i == len(self.moduli):
            return visit(residues)
        mask = self._masks[i]
        for r in range(self.moduli[i]):
            rest = uncovered & ~(mask << r)
            if self._walk(i + 1, rest, residues + (r,), budget, visit):
                return True
        return False
