"""Generators: the primitive family of covering numbers and counterexample coverings."""

from typing import Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import isprime, nextprime

from .arithmetic import crt_residue, divisors
from .config import DEFAULT_SIEVE_BUDGET, INT_LIMIT
from .errors import (
    CounterexampleSearchError,
    FamilyHypothesisError,
    FamilyShapeError,
    InvariantBreachError,
    ValueRangeError,
)
from .models import CongruenceSet, FactoredInteger
from .search import PrimitivityOutcome, is_primitive_covering_number, sun_sufficient
from .verify import Strategy, is_covering

DEFAULT_SEARCH_LIMIT = 10**6

Pair = Tuple[int, int]


class SunFamilyMember(BaseModel):
    """A primitive covering number built from an admissible prime list."""

    model_config = ConfigDict(frozen=True)

    primes: Tuple[int, ...]
    exponents: Tuple[int, ...]
    value: FactoredInteger


def sun_primitive(primes: Sequence[int]) -> SunFamilyMember:
    """
    Build the family member for ``primes`` = (2, p_2, ..., p_r).

    Exponents: alpha_i = (p_{i+1} - 1)/(p_i - 1) - 1 for i <= r - 2,
    alpha_{r-1} = floor((p_r - 1)/(p_{r-1} - 1)) and alpha_r = 1.

    Raises:
        FamilyHypothesisError: Naming the first hypothesis the list violates
    """
    ps = list(primes)
    r = len(ps)
    if r < 2:
        raise FamilyHypothesisError(ps, "r > 1", f"got {r} prime(s)")
    for p in ps:
        if not isprime(p):
            raise FamilyHypothesisError(ps, "all entries prime", f"{p} is not prime")
    if any(a >= b for a, b in zip(ps, ps[1:])):
        raise FamilyHypothesisError(ps, "strictly ascending", "primes must increase")
    if ps[0] != 2:
        raise FamilyHypothesisError(ps, "p_1 = 2", f"first prime is {ps[0]}")
    for t in range(1, r - 1):
        if (ps[t] - 1) % (ps[t - 1] - 1):
            raise FamilyHypothesisError(
                ps,
                f"p_{t + 1} = 1 (mod p_{t} - 1)",
                f"{ps[t]} mod {ps[t - 1] - 1} = {ps[t] % (ps[t - 1] - 1)}",
            )
    bound = (ps[-2] - 2) * (ps[-2] - 3)
    if ps[-1] < bound:
        raise FamilyHypothesisError(
            ps, "p_r >= (p_{r-1} - 2)(p_{r-1} - 3)", f"{ps[-1]} < {bound}"
        )

    exponents = [(ps[i + 1] - 1) // (ps[i] - 1) - 1 for i in range(r - 2)]
    exponents.append((ps[-1] - 1) // (ps[-2] - 1))
    exponents.append(1)

    value = 1
    for p, a in zip(ps, exponents):
        value *= p**a
    if value >= INT_LIMIT:
        raise ValueRangeError(value, 1, INT_LIMIT)
    return SunFamilyMember(
        primes=tuple(ps),
        exponents=tuple(exponents),
        value=FactoredInteger.from_factors(dict(zip(ps, exponents))),
    )


def sun_family_member(L: FactoredInteger) -> SunFamilyMember:
    """
    Recognize ``L`` as a family member by rebuilding it from its primes.

    Raises:
        FamilyShapeError: If L's primes are inadmissible or its exponents differ
    """
    if L.r < 2:
        raise FamilyShapeError(L.value, "needs at least two distinct primes")
    if L.exponents[-1] != 1:
        raise FamilyShapeError(L.value, "the largest prime must appear once")
    try:
        member = sun_primitive(L.primes)
    except FamilyHypothesisError as e:
        raise FamilyShapeError(L.value, f"primes violate '{e.hypothesis}'") from e
    if member.value.value != L.value:
        raise FamilyShapeError(
            L.value, f"the member for primes {L.primes} is {member.value.value}"
        )
    return member


def is_sun_family(L: FactoredInteger) -> bool:
    """True if ``L`` is a member of the primitive family."""
    try:
        sun_family_member(L)
    except FamilyShapeError:
        return False
    return True


class CounterexamplePlan(BaseModel):
    """
    Consecutive primes q < q' with n = q - delta for which
    n + 1 >= (delta - 1)(q' - n - 1); L = 2^n q q'.
    """

    model_config = ConfigDict(frozen=True)

    delta: int = Field(..., ge=3)
    q_k: int
    q_next: int
    n: int = Field(..., ge=1)
    L: FactoredInteger
    slack: int = Field(..., ge=1)

    @model_validator(mode="after")
    def validate_pair(self) -> "CounterexamplePlan":
        if self.n != self.q_k - self.delta:
            raise ValueError(f"n must be q_k - delta = {self.q_k - self.delta}")
        if nextprime(self.q_k) != self.q_next:
            raise ValueError(f"{self.q_next} is not the prime after {self.q_k}")
        if self.L.value != 2**self.n * self.q_k * self.q_next:
            raise ValueError("L must be 2^n * q_k * q_next")
        if self.slack != hole_slack(self.delta, self.q_k, self.q_next):
            raise ValueError("slack does not match the prime pair")
        return self

    @property
    def stage_four_demand(self) -> int:
        """Sub-holes left for the q_k * q_next moduli."""
        return (self.delta - 1) * (self.q_next - (self.n + 1))


def hole_slack(delta: int, q: int, q_next: int) -> int:
    """How many spare 2^j q q' moduli remain after every sub-hole is filled."""
    spare = q - delta + 1
    return spare - (delta - 1) * (q_next - spare)


def iter_counterexample_plans(
    delta: int, search_limit: int = DEFAULT_SEARCH_LIMIT
) -> Iterator[CounterexamplePlan]:
    """
    Scan consecutive prime pairs upward and yield each one that qualifies.

    Stops silently once q_next would exceed ``search_limit``.

    Raises:
        ValueRangeError: If delta < 3 or L leaves the 64-bit range
        InvariantBreachError: If a pair meets the inequality with equality
    """
    if delta < 3:
        raise ValueRangeError(delta, 3, INT_LIMIT)
    q = 2
    while True:
        q_next = int(nextprime(q))
        if q_next > search_limit:
            return
        n = q - delta
        if n >= 1:
            slack = hole_slack(delta, q, q_next)
            if slack == 0:
                raise InvariantBreachError(
                    "strict inequality",
                    f"delta={delta}, pair ({q}, {q_next}) has slack 0",
                )
            if slack > 0:
                value = 2**n * q * q_next
                if value >= INT_LIMIT:
                    raise ValueRangeError(value, 1, INT_LIMIT)
                yield CounterexamplePlan(
                    delta=delta,
                    q_k=q,
                    q_next=q_next,
                    n=n,
                    L=FactoredInteger.from_factors({2: n, q: 1, q_next: 1}),
                    slack=slack,
                )
        q = q_next


def find_counterexample_primes(
    delta: int, search_limit: int = DEFAULT_SEARCH_LIMIT, index: int = 1
) -> CounterexamplePlan:
    """
    The ``index``-th qualifying prime pair (1-based) for ``delta``.

    Raises:
        CounterexampleSearchError: If the scan hits search_limit first
    """
    if index < 1:
        raise ValueRangeError(index, 1, INT_LIMIT)
    for i, plan in enumerate(iter_counterexample_plans(delta, search_limit), start=1):
        if i == index:
            return plan
    raise CounterexampleSearchError(delta, search_limit, index)


class StageCounts(BaseModel):
    model_config = ConfigDict(frozen=True)

    powers_of_two: int
    first_prime: int
    second_prime: int
    both_primes: int


def counterexample_stages(plan: CounterexamplePlan) -> List[List[Pair]]:
    """The four groups of ``(residue, modulus)`` pairs, in construction order."""
    n, q, q2 = plan.n, plan.q_k, plan.q_next

    # 2-adic ladder: leaves only the class 0 mod 2^n
    ladder = [(2 ** (i - 1), 2**i) for i in range(1, n + 1)]

    # split the hole by q and fill q-classes 0..n
    first = [(crt_residue([(0, 2**j), (j, q)]), 2**j * q) for j in range(n + 1)]

    # each congruence clears one q2-class inside every remaining hole at once
    second = [(crt_residue([(0, 2**j), (j, q2)]), 2**j * q2) for j in range(n + 1)]

    holes = [(u, v) for u in range(n + 1, q) for v in range(n + 1, q2)]
    if len(holes) != plan.stage_four_demand or len(holes) > n + 1:
        raise InvariantBreachError(
            "stage four capacity", f"{len(holes)} sub-holes for {n + 1} moduli"
        )
    both = [
        (crt_residue([(0, 2**j), (u, q), (v, q2)]), 2**j * q * q2)
        for j, (u, v) in enumerate(holes)
    ]
    return [ladder, first, second, both]


def build_counterexample_covering(plan: CounterexamplePlan) -> CongruenceSet:
    """
    Explicit covering with distinct moduli dividing L = 2^n q q'.

    Raises:
        InvariantBreachError: If the sub-holes outnumber the available moduli
    """
    stages = counterexample_stages(plan)
    return CongruenceSet.of(pair for stage in stages for pair in stage)


class CounterexampleReport(BaseModel):
    """Evidence that L is a covering number failing the sufficiency test."""

    model_config = ConfigDict(frozen=True)

    L: int
    factorization: str
    delta: int
    q_k: int
    q_next: int
    exponent: int
    slack: int
    sun_sufficient: bool
    covering_verified: bool
    congruence_count: int
    stages: StageCounts
    unused_divisors: Tuple[int, ...]
    primitivity: Optional[PrimitivityOutcome] = None


def counterexample_report(
    plan: CounterexamplePlan,
    primitivity_budget: Optional[int] = None,
    sieve_budget: int = DEFAULT_SIEVE_BUDGET,
    threads: int = 1,
) -> CounterexampleReport:
    """
    Build the covering for ``plan`` and bundle every check on it.

    With ``primitivity_budget`` set, a budget-limited primitivity search on L
    is attached; at these sizes it normally ends ``unknown``.

    Raises:
        InvariantBreachError: If the test passes, the set fails to cover,
            or every divisor of L is used
    """
    stages = counterexample_stages(plan)
    covering = CongruenceSet.of(pair for stage in stages for pair in stage)
    check = sun_sufficient(plan.L)
    if check.holds:
        raise InvariantBreachError("sufficiency test fails", f"L={plan.L.value}")

    verdict = is_covering(
        covering, strategy=Strategy.AUTO, sieve_budget=sieve_budget, threads=threads
    )
    if not verdict.is_covering:
        raise InvariantBreachError(
            "construction covers", f"smallest uncovered {verdict.smallest_uncovered}"
        )

    used = set(covering.moduli)
    unused = tuple(d for d in divisors(plan.L, exclude_one=True) if d not in used)
    if not unused:
        raise InvariantBreachError("some divisor unused", f"L={plan.L.value}")

    primitivity = None
    if primitivity_budget is not None:
        primitivity = is_primitive_covering_number(
            plan.L,
            node_budget=primitivity_budget,
            sieve_budget=sieve_budget,
            threads=threads,
        )

    return CounterexampleReport(
        L=plan.L.value,
        factorization=str(plan.L),
        delta=plan.delta,
        q_k=plan.q_k,
        q_next=plan.q_next,
        exponent=plan.n,
        slack=plan.slack,
        sun_sufficient=check.holds,
        covering_verified=verdict.is_covering,
        congruence_count=len(covering),
        stages=StageCounts(
            powers_of_two=len(stages[0]),
            first_prime=len(stages[1]),
            second_prime=len(stages[2]),
            both_primes=len(stages[3]),
        ),
        unused_divisors=unused,
        primitivity=primitivity,
    )
