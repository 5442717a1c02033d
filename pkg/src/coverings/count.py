"""Counting coverings over a moduli set: closed formula and exhaustive oracle."""

from enum import Enum
from math import factorial
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .arithmetic import lcm_of
from .budget import NodeBudget, explore_branches
from .config import DEFAULT_NODE_BUDGET, DEFAULT_SIEVE_BUDGET
from .construct import sun_family_member
from .enumeration import ResidueBacktracker, Residues
from .errors import BudgetExhaustedError, FamilyShapeError, FormulaError
from .models import CongruenceSet, FactoredInteger, ModuliSet
from .parallel import ChunkExecutor
from .verify import is_minimal


class FormulaInputs(BaseModel):
    """Cell sizes the closed formula needs, read off the moduli alone."""

    model_config = ConfigDict(frozen=True)

    L: FactoredInteger
    size_Cpr: int = Field(..., ge=0)
    size_Q: int = Field(..., ge=0)
    size_Ctop: int = Field(..., ge=0)

    @model_validator(mode="after")
    def validate_sizes(self) -> "FormulaInputs":
        multiples = self.L.tau // 2  # divisors of L/p_r, since alpha_r = 1
        if not self.size_Q <= self.size_Cpr <= multiples:
            raise ValueError(
                f"need size_Q <= size_Cpr <= {multiples}, "
                f"got {self.size_Q}, {self.size_Cpr}"
            )
        return self


class CountMethod(str, Enum):
    FORMULA = "formula"
    ENUMERATION = "enumeration"


class CountResult(BaseModel):
    """
    A count of coverings with a given moduli set.

    ``count`` is None only for an enumeration that ran out of nodes; a
    reported count is always exact.
    """

    model_config = ConfigDict(frozen=True)

    count: Optional[int] = Field(default=None, ge=0)
    method: CountMethod
    complete: bool = True
    inputs: Optional[FormulaInputs] = None
    minimality: Optional[str] = None
    nodes_explored: Optional[int] = None
    budget: Optional[int] = None

    @model_validator(mode="after")
    def validate_count(self) -> "CountResult":
        if self.complete != (self.count is not None):
            raise ValueError("an incomplete count carries no value")
        if (self.method is CountMethod.FORMULA) != (self.inputs is not None):
            raise ValueError("formula inputs go with the formula method only")
        return self


def formula_inputs(M: ModuliSet) -> FormulaInputs:
    """
    Classify the moduli of M against L = lcm(M) = p_1^a_1 ... p_r.

    Raises:
        FamilyShapeError: If r < 2 or the largest prime of L is squared
    """
    L = lcm_of(M)
    if L.r < 2:
        raise FamilyShapeError(L.value, "needs at least two distinct primes")
    if L.exponents[-1] != 1:
        raise FamilyShapeError(L.value, "the largest prime must appear once")

    p_last = L.primes[-1]
    top = L.primes[-2] ** L.exponents[-2]
    size_Cpr = sum(1 for m in M if m % p_last == 0)
    size_Q = sum(1 for m in M if m % p_last == 0 and m % top)
    size_Ctop = sum(
        1 for m in M if m % p_last and m % top == 0 and (m // top) % L.primes[-2]
    )
    return FormulaInputs(L=L, size_Cpr=size_Cpr, size_Q=size_Q, size_Ctop=size_Ctop)


def count_by_formula(
    M: ModuliSet,
    assert_minimal: bool = False,
    node_budget: int = DEFAULT_NODE_BUDGET,
    sieve_budget: int = DEFAULT_SIEVE_BUDGET,
    threads: int = 1,
) -> CountResult:
    """
    Closed-form count of coverings with moduli M, for minimal M whose lcm is
    a family member:

        (|C_pr| - |Q|)! / ((p_{r-1} - |C_top|)! (p_r - |Q|)!) * prod (p_i!)^a_i

    Unless ``assert_minimal`` is set, minimality of M is first confirmed by
    enumeration within ``node_budget``.

    Raises:
        FamilyShapeError: If lcm(M) is not a family member
        FormulaError: If minimality is not confirmed, a factorial argument is
            negative or the division is inexact
    """
    inputs = formula_inputs(M)
    L = inputs.L
    sun_family_member(L)
    context = {
        "L": L.value,
        "size_Cpr": inputs.size_Cpr,
        "size_Q": inputs.size_Q,
        "size_Ctop": inputs.size_Ctop,
    }

    if assert_minimal:
        basis = "asserted"
    else:
        status = is_minimal_moduli_set(M, node_budget, sieve_budget, threads)
        if status.status is not MinimalityStatus.MINIMAL:
            reason = f"moduli set minimality not confirmed ({status.status.value})"
            raise FormulaError(reason, context)
        basis = "confirmed"

    p_prev, p_last = L.primes[-2], L.primes[-1]
    free = inputs.size_Cpr - inputs.size_Q
    top_gap = p_prev - inputs.size_Ctop
    last_gap = p_last - inputs.size_Q
    if top_gap < 0 or last_gap < 0:
        raise FormulaError("negative factorial argument", context)

    numerator = factorial(free)
    for p, a in L.factors:
        numerator *= factorial(p) ** a
    count, remainder = divmod(numerator, factorial(top_gap) * factorial(last_gap))
    if remainder:
        raise FormulaError("inexact division", context)

    return CountResult(
        count=count, method=CountMethod.FORMULA, inputs=inputs, minimality=basis
    )


def count_by_enumeration(
    M: ModuliSet,
    node_budget: int = DEFAULT_NODE_BUDGET,
    sieve_budget: int = DEFAULT_SIEVE_BUDGET,
    threads: int = 1,
    show_progress: bool = False,
) -> CountResult:
    """
    Count every covering with moduli M, minimal or not, by backtracking.

    Running out of nodes gives ``complete=False`` and no count.
    """
    engine = ResidueBacktracker(M, sieve_budget)
    outcome = explore_branches(
        engine.branches(),
        engine.count_branch,
        node_budget,
        ChunkExecutor(max_concurrency=threads, show_progress=show_progress),
    )
    return CountResult(
        count=None if outcome.exhausted else sum(outcome.values),
        method=CountMethod.ENUMERATION,
        complete=not outcome.exhausted,
        nodes_explored=outcome.nodes_explored,
        budget=node_budget,
    )


def _as_covering(engine: ResidueBacktracker, residues: Residues) -> CongruenceSet:
    return CongruenceSet.of(zip(residues, engine.moduli))


def enumerate_coverings(
    M: ModuliSet,
    limit: Optional[int] = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    sieve_budget: int = DEFAULT_SIEVE_BUDGET,
    threads: int = 1,
) -> List[CongruenceSet]:
    """
    Coverings with moduli M in lexicographic residue order, at most ``limit``.

    Raises:
        BudgetExhaustedError: If the nodes run out before the list is complete
    """
    engine = ResidueBacktracker(M, sieve_budget)

    def collect(first: int, budget: NodeBudget) -> List[Residues]:
        found: List[Residues] = []

        def visit(residues: Residues) -> bool:
            found.append(residues)
            return limit is not None and len(found) >= limit

        engine.walk_branch(first, budget, visit)
        return found

    outcome = explore_branches(
        engine.branches(),
        collect,
        node_budget,
        ChunkExecutor(max_concurrency=threads),
        stop=lambda values: limit is not None and sum(map(len, values)) >= limit,
    )
    if outcome.exhausted:
        raise BudgetExhaustedError("enumerate_coverings", node_budget)
    flat = [residues for branch in outcome.values for residues in branch]
    if limit is not None:
        flat = flat[:limit]
    return [_as_covering(engine, residues) for residues in flat]


class MinimalityStatus(str, Enum):
    MINIMAL = "minimal"
    NOT_MINIMAL = "not_minimal"
    EMPTY = "empty"
    UNKNOWN = "unknown"


class ModuliMinimality(BaseModel):
    """Whether every covering with moduli M is minimal."""

    model_config = ConfigDict(frozen=True)

    status: MinimalityStatus
    witness: Optional[CongruenceSet] = None
    coverings_checked: int = Field(..., ge=0)
    nodes_explored: int = Field(..., ge=0)
    budget: int

    @model_validator(mode="after")
    def validate_witness(self) -> "ModuliMinimality":
        if (self.witness is not None) != (self.status is MinimalityStatus.NOT_MINIMAL):
            raise ValueError("witness must be present exactly for not_minimal")
        return self


def is_minimal_moduli_set(
    M: ModuliSet,
    node_budget: int = DEFAULT_NODE_BUDGET,
    sieve_budget: int = DEFAULT_SIEVE_BUDGET,
    threads: int = 1,
) -> ModuliMinimality:
    """
    Walk the coverings with moduli M until one is not minimal.

    The witness is the lexicographically first non-minimal covering.
    """
    engine = ResidueBacktracker(M, sieve_budget)

    def scan(first: int, budget: NodeBudget) -> Tuple[int, Optional[CongruenceSet]]:
        checked = 0
        witness: Optional[CongruenceSet] = None

        def visit(residues: Residues) -> bool:
            nonlocal checked, witness
            checked += 1
            covering = _as_covering(engine, residues)
            if not is_minimal(covering, sieve_budget).is_minimal:
                witness = covering
                return True
            return False

        engine.walk_branch(first, budget, visit)
        return checked, witness

    outcome = explore_branches(
        engine.branches(),
        scan,
        node_budget,
        ChunkExecutor(max_concurrency=threads),
        stop=lambda values: values[-1][1] is not None,
    )
    checked = sum(c for c, _ in outcome.values)
    if outcome.exhausted:
        status, witness = MinimalityStatus.UNKNOWN, None
    elif outcome.stopped:
        status, witness = MinimalityStatus.NOT_MINIMAL, outcome.values[-1][1]
    elif checked == 0:
        status, witness = MinimalityStatus.EMPTY, None
    else:
        status, witness = MinimalityStatus.MINIMAL, None

    return ModuliMinimality(
        status=status,
        witness=witness,
        coverings_checked=checked,
        nodes_explored=outcome.nodes_explored,
        budget=node_budget,
    )
