"""Prime-power structure of a covering over a fixed L: cells and hole counts."""

from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .arithmetic import divisors, valuation
from .config import DEFAULT_SIEVE_BUDGET
from .construct import sun_family_member
from .errors import ModulusNotDividingError, SieveBudgetError
from .models import Congruence, CongruenceSet, FactoredInteger, ModuliSet
from .verify import sieve_covered

Cell = Tuple[int, int]


def cell_index(m: int, L: FactoredInteger) -> Cell:
    """
    1-based cell ``(s, t)`` of a modulus: ``p_s`` is the largest prime of L
    dividing ``m`` and ``t`` its exponent in ``m``.

    Raises:
        ModulusNotDividingError: If m does not divide L or m < 2
    """
    if m < 2 or L.value % m:
        raise ModulusNotDividingError(m, L.value)
    for s in range(L.r, 0, -1):
        p = L.primes[s - 1]
        if m % p == 0:
            return s, valuation(m, p)
    raise ModulusNotDividingError(m, L.value)  # pragma: no cover


def cells_of(L: FactoredInteger) -> List[Cell]:
    """All cells of L in refinement order (1,1), (1,2), ..., (r, alpha_r)."""
    return [(s, t) for s, a in enumerate(L.exponents, start=1) for t in range(1, a + 1)]


def window_of(L: FactoredInteger, s: int, t: int) -> int:
    """Upper end of the window for cell (s, t): p_1^a_1 ... p_{s-1}^a_{s-1} p_s^t."""
    N = 1
    for p, a in L.factors[: s - 1]:
        N *= p**a
    return N * L.primes[s - 1] ** t


class PartitionCell(BaseModel):
    """Congruences whose modulus has top prime p_s at exact power t."""

    model_config = ConfigDict(frozen=True)

    s: int = Field(..., ge=1)
    t: int = Field(..., ge=1)
    prime: int
    congruences: Tuple[Congruence, ...] = Field(default_factory=tuple)

    @property
    def size(self) -> int:
        return len(self.congruences)


class PartitionTable(BaseModel):
    """Every cell of L, empty ones included, in refinement order."""

    model_config = ConfigDict(frozen=True)

    L: FactoredInteger
    cells: Tuple[PartitionCell, ...]

    def cell(self, s: int, t: int) -> PartitionCell:
        for c in self.cells:
            if (c.s, c.t) == (s, t):
                return c
        raise KeyError((s, t))

    def is_exhaustive_and_disjoint(self, C: CongruenceSet) -> bool:
        """Check that the cells split ``C`` exactly."""
        placed = [c for cell in self.cells for c in cell.congruences]
        return len(placed) == len(set(placed)) and set(placed) == set(C)


def partition(C: CongruenceSet, L: FactoredInteger) -> PartitionTable:
    """
    Split ``C`` into cells by the largest prime of L dividing each modulus.

    Raises:
        ModulusNotDividingError: If a modulus does not divide L
    """
    buckets: Dict[Cell, List[Congruence]] = {cell: [] for cell in cells_of(L)}
    for c in C:
        buckets[cell_index(c.modulus, L)].append(c)
    return PartitionTable(
        L=L,
        cells=tuple(
            PartitionCell(s=s, t=t, prime=L.primes[s - 1], congruences=tuple(members))
            for (s, t), members in buckets.items()
        ),
    )


class LambdaEntry(BaseModel):
    """Holes left in the window of one cell by that cell and all earlier ones."""

    model_config = ConfigDict(frozen=True)

    s: int = Field(..., ge=1)
    t: int = Field(..., ge=1)
    prime: int
    window: int = Field(..., ge=1)
    holes: int = Field(..., ge=0)
    cell_size: int = Field(..., ge=0)


class LambdaTable(BaseModel):
    """Hole counts for every cell of L, in refinement order."""

    model_config = ConfigDict(frozen=True)

    L: FactoredInteger
    entries: Tuple[LambdaEntry, ...]

    def entry(self, s: int, t: int) -> LambdaEntry:
        for e in self.entries:
            if (e.s, e.t) == (s, t):
                return e
        raise KeyError((s, t))

    def holes(self, s: int, t: int) -> int:
        return self.entry(s, t).holes

    def cell_size(self, s: int, t: int) -> int:
        return self.entry(s, t).cell_size

    @property
    def final_holes(self) -> int:
        """Holes at the last cell; zero exactly for coverings."""
        return self.entries[-1].holes


def lambda_table(
    C: CongruenceSet, L: FactoredInteger, sieve_budget: int = DEFAULT_SIEVE_BUDGET
) -> LambdaTable:
    """
    Sieve each cell's window with the congruences of that cell and all earlier cells.

    Raises:
        ModulusNotDividingError: If a modulus does not divide L
        SieveBudgetError: If L exceeds the sieve budget
    """
    table = partition(C, L)
    if L.value > sieve_budget:
        raise SieveBudgetError(L.value, sieve_budget, "lambda_table")

    entries: List[LambdaEntry] = []
    used: List[Tuple[int, int]] = []
    for cell in table.cells:
        used.extend((c.residue, c.modulus) for c in cell.congruences)
        N = window_of(L, cell.s, cell.t)
        # every modulus placed so far divides N, so [0, N) is a full period
        covered = sieve_covered(used, 0, N)
        entries.append(
            LambdaEntry(
                s=cell.s,
                t=cell.t,
                prime=cell.prime,
                window=N,
                holes=int(N - np.count_nonzero(covered)),
                cell_size=cell.size,
            )
        )
    return LambdaTable(L=L, entries=tuple(entries))


class HoleRule(str, Enum):
    """Which refinement step an identity describes."""

    NEXT_PRIME = "next_prime"  # (s, alpha_s) -> (s+1, 1)
    NEXT_POWER = "next_power"  # (s, t) -> (s, t+1)


class HoleLemmaRecord(BaseModel):
    """
    One single-hole identity: a lone hole split by the prime ``prime``
    leaves ``prime - |target cell|`` holes.
    """

    model_config = ConfigDict(frozen=True)

    rule: HoleRule
    premise_cell: Cell
    target_cell: Cell
    prime: int
    expected: int
    actual: int
    premise_held: bool = True
    identity_held: bool
    covering_minimal: Optional[bool] = None


def check_hole_lemmas(
    T: LambdaTable, minimal: Optional[bool] = None
) -> List[HoleLemmaRecord]:
    """
    Evaluate the single-hole identities at every cell holding exactly one hole.

    The identities assume a minimal covering; that status is not checked here
    and is copied into each record from ``minimal``.
    """
    records: List[HoleLemmaRecord] = []
    L = T.L
    for s, (p, alpha) in enumerate(L.factors, start=1):
        for t in range(1, alpha + 1):
            if T.holes(s, t) != 1:
                continue
            if t < alpha:
                rule, target, prime = HoleRule.NEXT_POWER, (s, t + 1), p
            elif s < L.r:
                rule, target, prime = HoleRule.NEXT_PRIME, (s + 1, 1), L.primes[s]
            else:
                continue
            expected = prime - T.cell_size(*target)
            actual = T.holes(*target)
            records.append(
                HoleLemmaRecord(
                    rule=rule,
                    premise_cell=(s, t),
                    target_cell=target,
                    prime=prime,
                    expected=expected,
                    actual=actual,
                    identity_held=expected == actual,
                    covering_minimal=minimal,
                )
            )
    return records


def required_divisors(L: FactoredInteger) -> ModuliSet:
    """
    Divisors > 1 of L / (p_{r-1} p_r), which every minimal moduli set with
    lcm L must contain.

    Raises:
        FamilyShapeError: If L is not a member of the primitive family
    """
    member = sun_family_member(L)
    p_prev, p_last = member.primes[-2], member.primes[-1]
    return ModuliSet.of(divisors(L.value // (p_prev * p_last), exclude_one=True))


def forced_cell_sizes(L: FactoredInteger) -> Dict[Cell, int]:
    """
    Cell sizes every minimal covering over a family member L must have.

    Only the cells the closed form pins down are returned: all powers of 2,
    every cell of a prime below p_{r-1}, and the cells of p_{r-1} below
    exponent alpha_{r-1} - 1. Each has p_s - 1 members.

    Raises:
        FamilyShapeError: If L is not a member of the primitive family
    """
    sun_family_member(L)
    r = L.r
    forced: Dict[Cell, int] = {}
    for s, (p, alpha) in enumerate(L.factors, start=1):
        for t in range(1, alpha + 1):
            if s == 1 or s < r - 1 or (s == r - 1 and t < alpha - 1):
                forced[(s, t)] = p - 1
    return forced
