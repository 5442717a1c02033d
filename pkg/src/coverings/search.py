"""Covering-number and primitivity decisions by exhaustive search."""

from enum import Enum
from fractions import Fraction
from math import prod
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .arithmetic import as_factored, divisors, reciprocal_sum, repunit_mask
from .budget import NodeBudget, explore_branches
from .config import DEFAULT_NODE_BUDGET, DEFAULT_SIEVE_BUDGET
from .errors import InvariantBreachError, SieveBudgetError
from .models import CongruenceSet, FactoredInteger
from .parallel import ChunkExecutor
from .verify import is_covering

Assignment = List[Tuple[int, int]]


class SearchStatus(str, Enum):
    COVERING_NUMBER = "covering_number"
    NOT_COVERING_NUMBER = "not_covering_number"
    UNKNOWN = "unknown"


class SearchOutcome(BaseModel):
    """
    Three-valued answer to "is L a covering number?".

    ``not_covering_number`` is only reported after the whole tree was
    explored; running out of nodes yields ``unknown``.
    """

    model_config = ConfigDict(frozen=True)

    L: int = Field(..., ge=1)
    status: SearchStatus
    witness: Optional[CongruenceSet] = None
    nodes_explored: int = Field(..., ge=0)
    budget: int = Field(..., ge=1)

    @model_validator(mode="after")
    def validate_witness(self) -> "SearchOutcome":
        if (self.witness is not None) != (self.status is SearchStatus.COVERING_NUMBER):
            raise ValueError("witness must be present exactly for covering_number")
        return self


class DivisorSearch:
    """
    Backtracking over distinct divisors > 1 of L on the residues [0, L).

    Each node takes the smallest uncovered residue x and tries every unused
    divisor d, largest first, with the class x mod d. A node is cut when the
    unused divisors cannot cover what is left even without overlaps.
    """

    def __init__(self, L: FactoredInteger) -> None:
        self.period = L.value
        self.full = (1 << self.period) - 1
        self.divisors = sorted(divisors(L, exclude_one=True), reverse=True)
        self._masks = [repunit_mask(self.period, d) for d in self.divisors]
        self._weights = [self.period // d for d in self.divisors]
        self.capacity = sum(self._weights)

    def branches(self) -> List[int]:
        """Top-level branches: which divisor covers the residue 0."""
        return list(range(len(self.divisors)))

    def explore(self, first: int, budget: NodeBudget) -> Optional[Assignment]:
        unused = tuple(i for i in range(len(self.divisors)) if i != first)
        chosen = [(0, self.divisors[first])]
        return self._descend(
            self.full & ~self._masks[first],
            unused,
            self.capacity - self._weights[first],
            chosen,
            budget,
        )

    def _descend(
        self,
        uncovered: int,
        unused: Tuple[int, ...],
        capacity: int,
        chosen: Assignment,
        budget: NodeBudget,
    ) -> Optional[Assignment]:
        budget.spend()
        if uncovered == 0:
            return list(chosen)
        if uncovered.bit_count() > capacity:
            return None
        x = (uncovered & -uncovered).bit_length() - 1
        for k, i in enumerate(unused):
            d = self.divisors[i]
            chosen.append((x % d, d))
            found = self._descend(
                uncovered & ~(self._masks[i] << (x % d)),
                unused[:k] + unused[k + 1 :],
                capacity - self._weights[i],
                chosen,
                budget,
            )
            chosen.pop()
            if found is not None:
                return found
        return None


def is_covering_number(
    L: Union[int, FactoredInteger],
    node_budget: int = DEFAULT_NODE_BUDGET,
    sieve_budget: int = DEFAULT_SIEVE_BUDGET,
    threads: int = 1,
    show_progress: bool = False,
) -> SearchOutcome:
    """
    Decide whether some covering uses distinct divisors > 1 of ``L``.

    The first congruence always takes residue 0; by shift invariance this
    loses no coverings. The witness is the first covering in the fixed branch
    order, so it is the same for every thread count.

    Raises:
        SieveBudgetError: If L exceeds the sieve budget
    """
    factored = as_factored(L)
    if factored.value > sieve_budget:
        raise SieveBudgetError(factored.value, sieve_budget, "is_covering_number")

    search = DivisorSearch(factored)
    if search.capacity < search.period:
        # the root node alone settles it: the divisors are too sparse
        return SearchOutcome(
            L=factored.value,
            status=SearchStatus.NOT_COVERING_NUMBER,
            nodes_explored=1,
            budget=node_budget,
        )

    outcome = explore_branches(
        search.branches(),
        search.explore,
        node_budget,
        ChunkExecutor(max_concurrency=threads, show_progress=show_progress),
        stop=lambda values: values[-1] is not None,
    )
    if outcome.exhausted:
        status, witness = SearchStatus.UNKNOWN, None
    elif outcome.stopped:
        status = SearchStatus.COVERING_NUMBER
        witness = CongruenceSet.of(outcome.values[-1])  # type: ignore[arg-type]
        if not is_covering(witness, sieve_budget=sieve_budget).is_covering:
            raise InvariantBreachError("search witness covers", f"L={factored.value}")
    else:
        status, witness = SearchStatus.NOT_COVERING_NUMBER, None

    return SearchOutcome(
        L=factored.value,
        status=status,
        witness=witness,
        nodes_explored=outcome.nodes_explored,
        budget=node_budget,
    )


class PrimitivityStatus(str, Enum):
    PRIMITIVE = "primitive"
    NOT_PRIMITIVE = "not_primitive"
    NOT_COVERING_NUMBER = "not_covering_number"
    UNKNOWN = "unknown"


class DivisorCheck(BaseModel):
    """Status of one maximal proper divisor L/p."""

    model_config = ConfigDict(frozen=True)

    divisor: int
    status: SearchStatus
    nodes_explored: int
    density_rejected: bool = False


class PrimitivityOutcome(BaseModel):
    """Answer to "is L a covering number none of whose proper divisors is one?"."""

    model_config = ConfigDict(frozen=True)

    L: int
    status: PrimitivityStatus
    witness_divisor: Optional[int] = None
    covering: SearchOutcome
    divisor_checks: Tuple[DivisorCheck, ...] = Field(default_factory=tuple)


def is_primitive_covering_number(
    L: Union[int, FactoredInteger],
    node_budget: int = DEFAULT_NODE_BUDGET,
    sieve_budget: int = DEFAULT_SIEVE_BUDGET,
    threads: int = 1,
    show_progress: bool = False,
) -> PrimitivityOutcome:
    """
    Decide primitivity of ``L``.

    Covering numbers are closed under multiples, so only the maximal proper
    divisors L/p need a search: if none of them is a covering number, no
    proper divisor is. Divisors whose own divisors have reciprocal sum below
    1 are rejected without searching. Each search gets the full node budget.

    The first maximal divisor (by ascending p) that is a covering number
    decides ``not_primitive``; otherwise any ``unknown`` sub-search makes the
    answer ``unknown``.
    """
    factored = as_factored(L)
    covering = is_covering_number(
        factored,
        node_budget,
        sieve_budget,
        threads=threads,
        show_progress=show_progress,
    )
    if covering.status is not SearchStatus.COVERING_NUMBER:
        status = (
            PrimitivityStatus.UNKNOWN
            if covering.status is SearchStatus.UNKNOWN
            else PrimitivityStatus.NOT_COVERING_NUMBER
        )
        return PrimitivityOutcome(L=factored.value, status=status, covering=covering)

    checks: List[DivisorCheck] = []
    for p in factored.primes:
        d = factored.value // p
        if sum_of_reciprocal_divisors(d) < 1:
            checks.append(
                DivisorCheck(
                    divisor=d,
                    status=SearchStatus.NOT_COVERING_NUMBER,
                    nodes_explored=0,
                    density_rejected=True,
                )
            )
            continue
        sub = is_covering_number(
            d, node_budget, sieve_budget, threads=threads, show_progress=show_progress
        )
        checks.append(
            DivisorCheck(
                divisor=d, status=sub.status, nodes_explored=sub.nodes_explored
            )
        )
        if sub.status is SearchStatus.COVERING_NUMBER:
            return PrimitivityOutcome(
                L=factored.value,
                status=PrimitivityStatus.NOT_PRIMITIVE,
                witness_divisor=d,
                covering=covering,
                divisor_checks=tuple(checks),
            )

    unknown = any(c.status is SearchStatus.UNKNOWN for c in checks)
    return PrimitivityOutcome(
        L=factored.value,
        status=PrimitivityStatus.UNKNOWN if unknown else PrimitivityStatus.PRIMITIVE,
        covering=covering,
        divisor_checks=tuple(checks),
    )


def sum_of_reciprocal_divisors(n: int) -> Fraction:
    """Sum of 1/d over the divisors d > 1 of n."""
    return reciprocal_sum(divisors(n, exclude_one=True))


class SunTraceRow(BaseModel):
    """One inequality of the sufficiency test."""

    model_config = ConfigDict(frozen=True)

    s: int
    prime: int
    lhs: int
    rhs: int
    holds: bool


class SunCheck(BaseModel):
    """Sufficiency test for covering numbers, with its per-prime trace."""

    model_config = ConfigDict(frozen=True)

    L: int
    holds: bool
    trace: Tuple[SunTraceRow, ...] = Field(default_factory=tuple)

    def failing_rows(self) -> List[SunTraceRow]:
        return [row for row in self.trace if not row.holds]


def sun_sufficient(L: Union[int, FactoredInteger]) -> SunCheck:
    """
    Test prod_{t<s} (alpha_t + 1) >= p_s - 1 + [s = r] for every s.

    Passing guarantees L is a covering number. An L with no prime factors
    fails.
    """
    factored = as_factored(L)
    r = factored.r
    rows: List[SunTraceRow] = []
    for s in range(1, r + 1):
        lhs = prod(a + 1 for a in factored.exponents[: s - 1])
        p = factored.primes[s - 1]
        rhs = p - 1 + (1 if s == r else 0)
        rows.append(SunTraceRow(s=s, prime=p, lhs=lhs, rhs=rhs, holds=lhs >= rhs))
    return SunCheck(
        L=factored.value,
        holds=bool(rows) and all(row.holds for row in rows),
        trace=tuple(rows),
    )

