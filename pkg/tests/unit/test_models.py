"""Tests for the core value types."""

import pytest
from pydantic import ValidationError

from src.coverings.models import Congruence, CongruenceSet, FactoredInteger, ModuliSet


class TestCongruence:
    """Tests for Congruence."""

    def test_covers(self):
        c = Congruence(residue=1, modulus=4)
        assert c.covers(5)
        assert c.covers(-3)
        assert not c.covers(2)

    def test_rejects_unreduced_residue(self):
        with pytest.raises(ValidationError, match="not reduced"):
            Congruence(residue=4, modulus=4)

    def test_rejects_modulus_one(self):
        with pytest.raises(ValidationError):
            Congruence(residue=0, modulus=1)

    def test_shifted_wraps(self):
        assert Congruence(residue=3, modulus=4).shifted(2).residue == 1

    def test_is_hashable(self):
        a = Congruence(residue=0, modulus=2)
        assert len({a, Congruence(residue=0, modulus=2)}) == 1


class TestCongruenceSet:
    """Tests for CongruenceSet."""

    def test_of_sorts_and_reduces(self):
        C = CongruenceSet.of([(11, 12), (-2, 3), (0, 2)])
        assert C.pairs() == [(0, 2), (1, 3), (11, 12)]
        assert C.moduli == [2, 3, 12]

    def test_duplicate_modulus_rejected(self):
        with pytest.raises(ValidationError, match="duplicate modulus 4"):
            CongruenceSet.of([(0, 4), (1, 4)])

    def test_equality_is_order_independent(self):
        assert CongruenceSet.of([(0, 2), (0, 3)]) == CongruenceSet.of([(0, 3), (0, 2)])

    def test_without(self):
        C = CongruenceSet.of([(0, 2), (0, 3), (1, 4)])
        smaller = C.without(Congruence(residue=0, modulus=3))
        assert smaller.moduli == [2, 4]
        assert len(C) == 3

    def test_container_protocol(self):
        C = CongruenceSet.of([(0, 2), (1, 4)])
        assert Congruence(residue=1, modulus=4) in C
        assert [c.modulus for c in C] == [2, 4]

    def test_shifted(self):
        C = CongruenceSet.of([(0, 2), (2, 3)]).shifted(1)
        assert C.pairs() == [(1, 2), (0, 3)]


class TestFactoredInteger:
    """Tests for FactoredInteger."""

    def test_from_factors(self):
        L = FactoredInteger.from_factors({13: 1, 2: 8, 11: 1, 5: 0})
        assert L.value == 2**8 * 11 * 13
        assert L.primes == [2, 11, 13]
        assert L.exponents == [8, 1, 1]
        assert L.r == 3
        assert L.tau == 9 * 2 * 2
        assert str(L) == "2^8*11*13"

    def test_exponent_of(self):
        L = FactoredInteger.from_factors({2: 4, 5: 1})
        assert L.exponent_of(2) == 4
        assert L.exponent_of(3) == 0
        assert L.as_dict() == {2: 4, 5: 1}

    def test_wrong_product_rejected(self):
        with pytest.raises(ValidationError, match="multiply"):
            FactoredInteger(value=12, factors=((2, 1), (3, 1)))

    def test_composite_factor_rejected(self):
        with pytest.raises(ValidationError, match="not prime"):
            FactoredInteger(value=4, factors=((4, 1),))

    def test_unordered_factors_rejected(self):
        with pytest.raises(ValidationError, match="ascending"):
            FactoredInteger(value=6, factors=((3, 1), (2, 1)))

    def test_value_range(self):
        with pytest.raises(ValidationError):
            FactoredInteger.from_factors({2: 63})


class TestModuliSet:
    """Tests for ModuliSet."""

    def test_sorted(self):
        assert ModuliSet.of([12, 2, 6]).moduli == (2, 6, 12)

    def test_rejects_small_and_duplicate(self):
        with pytest.raises(ValidationError, match="smaller than 2"):
            ModuliSet.of([1, 2])
        with pytest.raises(ValidationError, match="duplicate"):
            ModuliSet.of([2, 2])

    def test_without(self):
        M = ModuliSet.of([2, 3, 4])
        assert list(M.without(3)) == [2, 4]
        assert 3 in M
