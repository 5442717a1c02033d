"""Covering verification, uncovered census and minimality."""

import sys
from enum import Enum
from fractions import Fraction
from math import gcd, prod
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .arithmetic import as_factored, lcm_of, prime_chain, reciprocal_sum
from .config import DEFAULT_SIEVE_BUDGET
from .errors import (
    EmptyInputError,
    InvariantBreachError,
    NotACoveringError,
    SieveBudgetError,
    WindowError,
)
from .models import Congruence, CongruenceSet, FactoredInteger
from .parallel import ChunkExecutor

Pair = Tuple[int, int]
# (uncovered count, smallest uncovered) over some part of [0, period)
Census = Tuple[int, Optional[int]]


class Strategy(str, Enum):
    """How ``is_covering`` walks the period."""

    BITSET = "bitset"
    CRT_TREE = "crt_tree"
    AUTO = "auto"

    @classmethod
    def parse(cls, value: Union[str, "Strategy"]) -> "Strategy":
        """Accept enum members, values, and the short alias ``crt``."""
        if isinstance(value, Strategy):
            return value
        if value == "crt":
            return cls.CRT_TREE
        return cls(value)


class VerificationReport(BaseModel):
    """Outcome of checking one full period of a congruence set."""

    model_config = ConfigDict(frozen=True)

    is_covering: bool
    period: int = Field(..., ge=1)
    uncovered_count: int = Field(..., ge=0)
    smallest_uncovered: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def validate_consistency(self) -> "VerificationReport":
        """is_covering, a zero count and a missing witness go together."""
        if self.is_covering != (self.uncovered_count == 0):
            raise ValueError("is_covering disagrees with uncovered_count")
        if self.is_covering != (self.smallest_uncovered is None):
            raise ValueError("is_covering disagrees with smallest_uncovered")
        low = self.smallest_uncovered
        if low is not None and low >= self.period:
            raise ValueError("smallest_uncovered must lie in [0, period)")
        return self


class PrivateWitness(BaseModel):
    """An integer covered by ``congruence`` and by no other member."""

    model_config = ConfigDict(frozen=True)

    congruence: Congruence
    witness: int


class MinimalityReport(BaseModel):
    """Which congruences of a covering can be dropped on their own."""

    model_config = ConfigDict(frozen=True)

    is_minimal: bool
    removable: Tuple[Congruence, ...] = Field(default_factory=tuple)
    private_witness: Tuple[PrivateWitness, ...] = Field(default_factory=tuple)

    @model_validator(mode="after")
    def validate_partition(self) -> "MinimalityReport":
        if self.is_minimal != (not self.removable):
            raise ValueError("is_minimal disagrees with removable")
        witnessed = {w.congruence for w in self.private_witness}
        if witnessed & set(self.removable):
            raise ValueError("a congruence cannot be both removable and witnessed")
        return self

    def witness_for(self, congruence: Congruence) -> Optional[int]:
        """Private witness of ``congruence``, or None if it is removable."""
        for entry in self.private_witness:
            if entry.congruence == congruence:
                return entry.witness
        return None


def sieve_covered(pairs: Sequence[Pair], lo: int, hi: int) -> np.ndarray:
    """
    Boolean mask over [lo, hi): True where some ``(residue, modulus)`` pair covers.
    """
    covered = np.zeros(hi - lo, dtype=bool)
    for residue, modulus in pairs:
        covered[(residue - lo) % modulus :: modulus] = True
    return covered


def _segment_census(pairs: Sequence[Pair], lo: int, hi: int) -> Census:
    covered = sieve_covered(pairs, lo, hi)
    uncovered = int(covered.size - np.count_nonzero(covered))
    if uncovered == 0:
        return 0, None
    return uncovered, lo + int(np.argmin(covered))


def _merge(parts: Sequence[Census]) -> Census:
    """Sum counts and keep the least witness; order independent."""
    total = sum(count for count, _ in parts)
    lows = [low for _, low in parts if low is not None]
    return total, (min(lows) if lows else None)


def _bitset_census(
    pairs: Sequence[Pair], period: int, executor: ChunkExecutor
) -> Census:
    chunks = executor.max_concurrency
    bounds = [period * k // chunks for k in range(chunks + 1)]
    segments = [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
    parts = executor.map(lambda seg: _segment_census(pairs, seg[0], seg[1]), segments)
    return _merge(parts)


class _CrtTree:
    """
    Walks the residue classes of the period one prime factor at a time.

    A node is a class ``a (mod d)`` with ``d`` a prefix product of the prime
    chain. Only congruences meeting the class stay active; the node is covered
    once an active modulus divides ``d``, and fully uncovered once none are
    active. Either way the subtree is settled without descending further.
    """

    def __init__(self, pairs: Sequence[Pair], L: FactoredInteger) -> None:
        self.pairs = list(pairs)
        self.chain = prime_chain(L)
        self.period = L.value

    def children(self) -> List[int]:
        """Residues of the root's children, mod the smallest prime."""
        return list(range(self.chain[0]))

    def child_census(self, residue: int) -> Census:
        return self._settle(residue, 1, self.chain[0], self.pairs)

    def _settle(self, a: int, depth: int, d: int, candidates: Sequence[Pair]) -> Census:
        active = [(x, m) for x, m in candidates if (a - x) % gcd(m, d) == 0]
        if not active:
            return self.period // d, a
        if any(d % m == 0 for _, m in active):
            return 0, None
        p = self.chain[depth]
        return _merge(
            [self._settle(a + j * d, depth + 1, d * p, active) for j in range(p)]
        )


def _first_uncovered(pairs: Sequence[Pair], period: int) -> Optional[int]:
    for n in range(period):
        if not any((n - x) % m == 0 for x, m in pairs):
            return n
    return None


def _sparse_census(pairs: Sequence[Pair], L: FactoredInteger) -> Optional[Census]:
    """
    Census without walking the period, for sets of density below 1.

    When the moduli are pairwise coprime (their product is the lcm) the
    classes are independent, so exactly prod(m - 1) residues stay uncovered.
    Other sparse sets return None and take the regular walk.
    """
    moduli = [m for _, m in pairs]
    if prod(moduli) != L.value:
        return None
    smallest = _first_uncovered(pairs, L.value)
    if smallest is None:
        raise InvariantBreachError("density below 1 leaves a hole", f"L={L.value}")
    return prod(m - 1 for m in moduli), smallest


def _resolve_strategy(strategy: Strategy, period: int, sieve_budget: int) -> Strategy:
    if strategy is Strategy.AUTO:
        return Strategy.BITSET if period <= sieve_budget else Strategy.CRT_TREE
    return strategy


def is_covering(
    C: CongruenceSet,
    strategy: Union[str, Strategy] = Strategy.AUTO,
    sieve_budget: int = DEFAULT_SIEVE_BUDGET,
    threads: int = 1,
    show_progress: bool = False,
) -> VerificationReport:
    """
    Decide whether ``C`` covers every integer by checking one full period.

    Both strategies report the same census, including the least uncovered
    non-negative integer, for any number of threads. A set whose density is
    below 1 cannot cover; its census is read off directly when the moduli
    are pairwise coprime.

    Args:
        C: Non-empty congruence set
        strategy: bitset, crt_tree (alias crt) or auto
        sieve_budget: Largest period the bitset may allocate
        threads: Worker threads for sieve chunks or top-level CRT branches
        show_progress: Write chunk progress to stderr

    Raises:
        EmptyInputError: If C is empty
        LcmOverflowError: If lcm of the moduli leaves the 64-bit range
        SieveBudgetError: If bitset is requested for a period above the budget
    """
    if not len(C):
        raise EmptyInputError("congruence set")
    L = lcm_of(C.moduli)
    chosen = _resolve_strategy(Strategy.parse(strategy), L.value, sieve_budget)
    executor = ChunkExecutor(max_concurrency=threads, show_progress=show_progress)

    if chosen is Strategy.BITSET and L.value > sieve_budget:
        raise SieveBudgetError(L.value, sieve_budget, "is_covering")

    census = _sparse_census(C.pairs(), L) if density(C) < 1 else None
    if census is not None:
        count, smallest = census
        if show_progress:
            print(f"density {density(C)} < 1: census read off", file=sys.stderr)
    elif chosen is Strategy.BITSET:
        count, smallest = _bitset_census(C.pairs(), L.value, executor)
    else:
        tree = _CrtTree(C.pairs(), L)
        count, smallest = _merge(executor.map(tree.child_census, tree.children()))

    return VerificationReport(
        is_covering=count == 0,
        period=L.value,
        uncovered_count=count,
        smallest_uncovered=smallest,
    )


def uncovered_set(
    C: CongruenceSet,
    window: Union[int, FactoredInteger],
    sieve_budget: int = DEFAULT_SIEVE_BUDGET,
) -> List[int]:
    """
    Integers in [1, window] covered by no congruence of ``C``.

    Raises:
        WindowError: If some modulus does not divide the window
        SieveBudgetError: If the window exceeds the sieve budget
    """
    W = as_factored(window).value
    offending = [m for m in C.moduli if W % m]
    if offending:
        raise WindowError(W, offending)
    if W > sieve_budget:
        raise SieveBudgetError(W, sieve_budget, "uncovered_set")
    # index 0 stands for W itself
    covered = sieve_covered(C.pairs(), 0, W)
    holes = [int(n) for n in np.flatnonzero(~covered)]
    if holes and holes[0] == 0:
        holes = holes[1:] + [W]
    return holes


def is_minimal(
    C: CongruenceSet, sieve_budget: int = DEFAULT_SIEVE_BUDGET
) -> MinimalityReport:
    """
    Decide minimality of a covering from one coverer-count sieve.

    A covering is minimal exactly when every congruence covers some integer
    no other congruence covers; such an integer is its private witness.

    Raises:
        NotACoveringError: If C is not a covering
        SieveBudgetError: If the period exceeds the sieve budget
    """
    if not len(C):
        raise EmptyInputError("congruence set")
    period = lcm_of(C.moduli).value
    if period > sieve_budget:
        raise SieveBudgetError(period, sieve_budget, "is_minimal")

    counts = np.zeros(period, dtype=np.int32)
    for residue, modulus in C.pairs():
        counts[residue::modulus] += 1
    bare = counts == 0
    if bare.any():
        raise NotACoveringError(int(np.argmax(bare)), "is_minimal")

    removable: List[Congruence] = []
    witnesses: List[PrivateWitness] = []
    for c in C:
        alone = np.flatnonzero(counts[c.residue :: c.modulus] == 1)
        if alone.size:
            witnesses.append(
                PrivateWitness(
                    congruence=c, witness=c.residue + int(alone[0]) * c.modulus
                )
            )
        else:
            removable.append(c)

    return MinimalityReport(
        is_minimal=not removable,
        removable=tuple(removable),
        private_witness=tuple(witnesses),
    )


def density(C: CongruenceSet) -> Fraction:
    """Exact sum of reciprocals of the moduli."""
    return reciprocal_sum(C.moduli)
