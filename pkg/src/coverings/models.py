"""Pydantic models for the core value types of covering systems."""

from math import prod
from typing import Dict, Iterable, List, Mapping, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import isprime

from .config import INT_LIMIT


class Congruence(BaseModel):
    """A residue class ``residue (mod modulus)``."""

    model_config = ConfigDict(frozen=True)

    residue: int = Field(..., ge=0, description="Least non-negative residue")
    modulus: int = Field(..., ge=2, description="Modulus, at least 2")

    @model_validator(mode="after")
    def validate_reduced(self) -> "Congruence":
        """Ensure 0 <= residue < modulus."""
        if self.residue >= self.modulus:
            raise ValueError(
                f"residue {self.residue} is not reduced modulo {self.modulus}"
            )
        return self

    def covers(self, n: int) -> bool:
        """Check whether the integer ``n`` lies in this class."""
        return n % self.modulus == self.residue

    def shifted(self, k: int) -> "Congruence":
        """Translate the class by ``k``."""
        return Congruence(
            residue=(self.residue + k) % self.modulus, modulus=self.modulus
        )

    def __str__(self) -> str:
        return f"({self.residue},{self.modulus})"


class CongruenceSet(BaseModel):
    """
    A finite set of congruences with pairwise distinct moduli.

    Congruences are stored in ascending-modulus order, so equality and
    serialization are canonical.
    """

    model_config = ConfigDict(frozen=True)

    congruences: Tuple[Congruence, ...] = Field(default_factory=tuple)

    @field_validator("congruences")
    @classmethod
    def validate_distinct_sorted(
        cls, v: Tuple[Congruence, ...]
    ) -> Tuple[Congruence, ...]:
        """Sort by modulus and reject repeated moduli."""
        ordered = tuple(sorted(v, key=lambda c: c.modulus))
        for first, second in zip(ordered, ordered[1:]):
            if first.modulus == second.modulus:
                raise ValueError(f"duplicate modulus {first.modulus}")
        return ordered

    @classmethod
    def of(cls, pairs: Iterable[Tuple[int, int]]) -> "CongruenceSet":
        """Build from ``(residue, modulus)`` pairs, reducing each residue."""
        return cls(
            congruences=tuple(
                Congruence(residue=x % m if m >= 2 else x, modulus=m)
                for x, m in pairs
            )
        )

    @property
    def moduli(self) -> List[int]:
        """Moduli in ascending order."""
        return [c.modulus for c in self.congruences]

    def pairs(self) -> List[Tuple[int, int]]:
        """Congruences as ``(residue, modulus)`` tuples."""
        return [(c.residue, c.modulus) for c in self.congruences]

    def without(self, *removed: Congruence) -> "CongruenceSet":
        """Return a copy with the given congruences removed."""
        drop = set(removed)
        return CongruenceSet(
            congruences=tuple(c for c in self.congruences if c not in drop)
        )

    def shifted(self, k: int) -> "CongruenceSet":
        """Translate every class by ``k``."""
        return CongruenceSet(congruences=tuple(c.shifted(k) for c in self.congruences))

    def __len__(self) -> int:
        return len(self.congruences)

    def __iter__(self):  # type: ignore[override]
        return iter(self.congruences)

    def __contains__(self, item: object) -> bool:
        return item in self.congruences

    def __repr__(self) -> str:
        return f"<CongruenceSet size={len(self.congruences)}>"


class FactoredInteger(BaseModel):
    """
    A positive integer in the signed 64-bit range with its prime factorization.

    ``factors`` lists ``(prime, exponent)`` pairs with primes strictly ascending.
    """

    model_config = ConfigDict(frozen=True)

    value: int = Field(..., ge=1, lt=INT_LIMIT)
    factors: Tuple[Tuple[int, int], ...] = Field(default_factory=tuple)

    @model_validator(mode="after")
    def validate_factorization(self) -> "FactoredInteger":
        """Check ordering, exponents, primality and the product."""
        previous = 1
        for p, a in self.factors:
            if p <= previous:
                raise ValueError(f"primes must be strictly ascending, got {p}")
            if a < 1:
                raise ValueError(f"exponent of {p} must be positive, got {a}")
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
            previous = p
        if prod(p**a for p, a in self.factors) != self.value:
            raise ValueError(f"factors do not multiply to {self.value}")
        return self

    @classmethod
    def from_factors(cls, factors: Mapping[int, int]) -> "FactoredInteger":
        """Build from a prime -> exponent mapping, dropping zero exponents."""
        items = tuple(sorted((p, a) for p, a in factors.items() if a > 0))
        return cls(value=prod(p**a for p, a in items), factors=items)

    @property
    def primes(self) -> List[int]:
        """Primes p_1 < ... < p_r."""
        return [p for p, _ in self.factors]

    @property
    def exponents(self) -> List[int]:
        """Exponents alpha_1, ..., alpha_r."""
        return [a for _, a in self.factors]

    @property
    def r(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)

    @property
    def tau(self) -> int:
        """Number of divisors."""
        return prod(a + 1 for _, a in self.factors)

    def as_dict(self) -> Dict[int, int]:
        """Factorization as a prime -> exponent mapping."""
        return dict(self.factors)

    def exponent_of(self, p: int) -> int:
        """Exponent of ``p`` in the factorization (0 if absent)."""
        return self.as_dict().get(p, 0)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{a}" if a > 1 else str(p) for p, a in self.factors)


class ModuliSet(BaseModel):
    """A sorted set of pairwise distinct moduli, each at least 2."""

    model_config = ConfigDict(frozen=True)

    moduli: Tuple[int, ...] = Field(default_factory=tuple)

    @field_validator("moduli")
    @classmethod
    def validate_moduli(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        """Sort, and reject moduli below 2 or repeated moduli."""
        ordered = tuple(sorted(v))
        for m in ordered:
            if m < 2:
                raise ValueError(f"modulus {m} is smaller than 2")
        for first, second in zip(ordered, ordered[1:]):
            if first == second:
                raise ValueError(f"duplicate modulus {first}")
        return ordered

    @classmethod
    def of(cls, moduli: Iterable[int]) -> "ModuliSet":
        """Build from any iterable of moduli."""
        return cls(moduli=tuple(moduli))

    def without(self, *removed: int) -> "ModuliSet":
        """Return a copy with the given moduli removed."""
        return ModuliSet(moduli=tuple(m for m in self.moduli if m not in removed))

    def __len__(self) -> int:
        return len(self.moduli)

    def __iter__(self):  # type: ignore[override]
        return iter(self.moduli)

    def __contains__(self, item: object) -> bool:
        return item in self.moduli
