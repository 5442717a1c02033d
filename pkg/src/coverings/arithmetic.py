"""Integer arithmetic shared by every module: factorization, lcm, divisors, CRT."""

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from sympy import divisors as sympy_divisors
from sympy import factorint, isprime
from sympy.ntheory.modular import crt

from .config import INT_LIMIT
from .errors import EmptyInputError, LcmOverflowError, ModulusError, ValueRangeError
from .models import Congruence, FactoredInteger, ModuliSet


def factorize(n: int) -> FactoredInteger:
    """
    Factor ``n`` into primes.

    Every returned prime is re-certified with a deterministic primality test
    (exact below 2^64), and the factors are multiplied back to ``n``.

    Raises:
        ValueRangeError: If n is outside [1, 2^63)
    """
    if n < 1 or n >= INT_LIMIT:
        raise ValueRangeError(n, 1, INT_LIMIT)
    factors: Dict[int, int] = {int(p): int(a) for p, a in factorint(n).items()}
    for p in factors:
        if not isprime(p):  # pragma: no cover
            raise ValueError(f"factorint returned composite {p} for {n}")
    return FactoredInteger.from_factors(factors)


def as_factored(n: Union[int, FactoredInteger]) -> FactoredInteger:
    """Accept either a plain integer or an already factored one."""
    if isinstance(n, FactoredInteger):
        return n
    return factorize(n)


def lcm_of(moduli: Union[ModuliSet, Iterable[int]]) -> FactoredInteger:
    """
    Factored least common multiple of a non-empty set of moduli.

    Raises:
        EmptyInputError: If no moduli are given
        LcmOverflowError: If the lcm reaches 2^63
    """
    values = list(moduli)
    if not values:
        raise EmptyInputError("moduli set")

    merged: Dict[int, int] = {}
    for m in values:
        for p, a in factorize(m).factors:
            if a > merged.get(p, 0):
                merged[p] = a

    value = 1
    for p, a in merged.items():
        value *= p**a
        if value >= INT_LIMIT:
            raise LcmOverflowError(values, INT_LIMIT)
    return FactoredInteger.from_factors(merged)


def divisors(L: Union[int, FactoredInteger], exclude_one: bool = False) -> List[int]:
    """All divisors of ``L`` in ascending order, optionally without 1."""
    value = L.value if isinstance(L, FactoredInteger) else L
    result = [int(d) for d in sympy_divisors(value)]
    if exclude_one:
        result = [d for d in result if d > 1]
    return result


def normalize(x: int, m: int) -> Congruence:
    """
    Reduce ``x`` into [0, m).

    Raises:
        ModulusError: If m < 2
    """
    if m < 2:
        raise ModulusError(m, "normalize")
    return Congruence(residue=x % m, modulus=m)


def valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in ``n``."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def prime_chain(L: FactoredInteger) -> List[int]:
    """Primes of ``L`` repeated by multiplicity, ascending (2, 2, ..., 11, 13)."""
    return [p for p, a in L.factors for _ in range(a)]


def reciprocal_sum(moduli: Iterable[int]) -> Fraction:
    """Exact sum of 1/m."""
    return sum((Fraction(1, m) for m in moduli), Fraction(0))


def crt_residue(system: Sequence[Tuple[int, int]]) -> int:
    """
    Solve ``x = r_i (mod m_i)`` for pairwise coprime moduli.

    Args:
        system: ``(residue, modulus)`` pairs; modulus-1 entries are ignored

    Returns:
        The least non-negative solution
    """
    pairs = [(r, m) for r, m in system if m > 1]
    if not pairs:
        return 0
    solution = crt([m for _, m in pairs], [r for r, _ in pairs])
    if solution is None:  # pragma: no cover
        raise ValueError(f"incompatible system {pairs}")
    return int(solution[0])


def repunit_mask(period: int, step: int) -> int:
    """
    Bit mask with bits 0, step, 2*step, ... below ``period``.

    ``step`` must divide ``period``.
    """
    return ((1 << period) - 1) // ((1 << step) - 1)
