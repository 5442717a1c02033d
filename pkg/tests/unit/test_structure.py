"""Tests for cells, hole counts and single-hole identities."""

import random

import pytest

from src.coverings.arithmetic import factorize
from src.coverings.corpus import corpus_entry
from src.coverings.errors import (
    FamilyShapeError,
    ModulusNotDividingError,
    SieveBudgetError,
)
from src.coverings.models import Congruence, CongruenceSet
from src.coverings.structure import (
    HoleRule,
    cell_index,
    cells_of,
    check_hole_lemmas,
    forced_cell_sizes,
    lambda_table,
    partition,
    required_divisors,
    window_of,
)

ERDOS = CongruenceSet.of([(0, 2), (0, 3), (1, 4), (1, 6), (11, 12)])
L12 = factorize(12)


def assert_refinement_bound(table):
    """Each cell can at most multiply the previous holes by its prime."""
    for before, after in zip(table.entries, table.entries[1:]):
        assert after.window == before.window * after.prime
        assert after.holes <= after.prime * before.holes


class TestCells:
    """Tests for cell indexing."""

    def test_cell_index_uses_largest_prime(self):
        L = factorize(2**4 * 5 * 7)
        assert cell_index(8, L) == (1, 3)
        assert cell_index(10, L) == (2, 1)
        assert cell_index(2 * 5 * 7, L) == (3, 1)

    def test_cell_index_rejects_non_divisor(self):
        with pytest.raises(ModulusNotDividingError):
            cell_index(5, L12)
        with pytest.raises(ModulusNotDividingError):
            cell_index(1, L12)

    def test_cells_of(self):
        assert cells_of(L12) == [(1, 1), (1, 2), (2, 1)]

    def test_window_of(self):
        L = factorize(2**4 * 5)
        assert window_of(L, 1, 3) == 8
        assert window_of(L, 2, 1) == 80


class TestPartition:
    """Tests for partition."""

    def test_erdos_cells(self):
        table = partition(ERDOS, L12)
        assert table.cell(1, 1).congruences == (Congruence(residue=0, modulus=2),)
        assert table.cell(1, 2).congruences == (Congruence(residue=1, modulus=4),)
        assert [c.modulus for c in table.cell(2, 1).congruences] == [3, 6, 12]
        assert table.is_exhaustive_and_disjoint(ERDOS)

    def test_empty_cells_are_listed(self):
        table = partition(CongruenceSet.of([(0, 2)]), L12)
        assert [c.size for c in table.cells] == [1, 0, 0]

    def test_unknown_cell(self):
        with pytest.raises(KeyError):
            partition(ERDOS, L12).cell(3, 1)

    def test_modulus_outside_L(self):
        with pytest.raises(ModulusNotDividingError):
            partition(CongruenceSet.of([(0, 5)]), L12)


class TestLambdaTable:
    """Tests for lambda_table."""

    def test_erdos_holes(self):
        T = lambda_table(ERDOS, L12)
        assert [e.holes for e in T.entries] == [1, 1, 0]
        assert [e.window for e in T.entries] == [2, 4, 12]
        assert T.cell_size(2, 1) == 3
        assert T.final_holes == 0

    def test_non_covering_keeps_holes(self):
        broken = ERDOS.without(Congruence(residue=11, modulus=12))
        assert lambda_table(broken, L12).final_holes == 1

    def test_budget(self):
        with pytest.raises(SieveBudgetError):
            lambda_table(ERDOS, L12, sieve_budget=6)

    @pytest.mark.parametrize("name", ["erdos12", "exampleB", "exampleC", "C1"])
    def test_refinement_bound_on_corpus(self, name):
        entry = corpus_entry(name)
        assert_refinement_bound(lambda_table(entry.covering, entry.L))

    def test_refinement_bound_on_random_sets(self):
        rng = random.Random(3)
        divisors_120 = [d for d in range(2, 121) if 120 % d == 0]
        L120 = factorize(120)
        for _ in range(50):
            moduli = rng.sample(divisors_120, rng.randint(1, 10))
            C = CongruenceSet.of((rng.randrange(m), m) for m in moduli)
            assert_refinement_bound(lambda_table(C, L120))


class TestHoleLemmas:
    """Tests for check_hole_lemmas."""

    def test_erdos_identities_hold(self):
        records = check_hole_lemmas(lambda_table(ERDOS, L12), minimal=True)
        assert len(records) == 2

        first, second = records
        assert first.rule is HoleRule.NEXT_POWER
        assert (first.premise_cell, first.target_cell) == ((1, 1), (1, 2))
        assert (first.expected, first.actual) == (1, 1)

        assert second.rule is HoleRule.NEXT_PRIME
        assert second.target_cell == (2, 1)
        assert second.prime == 3
        assert (second.expected, second.actual) == (0, 0)

        assert all(r.identity_held and r.covering_minimal for r in records)

    def test_no_record_without_single_hole(self):
        C = CongruenceSet.of([(0, 4), (1, 4 * 3)])
        assert check_hole_lemmas(lambda_table(C, L12)) == []


class TestFamilyStructure:
    """Tests for required_divisors and forced_cell_sizes."""

    def test_required_divisors(self):
        assert list(required_divisors(factorize(80))) == [2, 4, 8]
        assert list(required_divisors(L12)) == [2]

    def test_forced_cell_sizes(self):
        assert forced_cell_sizes(factorize(80)) == {
            (1, 1): 1,
            (1, 2): 1,
            (1, 3): 1,
            (1, 4): 1,
        }
        assert forced_cell_sizes(factorize(378)) == {(1, 1): 1, (2, 1): 2}

    def test_non_member_rejected(self):
        with pytest.raises(FamilyShapeError):
            required_divisors(factorize(36))
        with pytest.raises(FamilyShapeError):
            forced_cell_sizes(factorize(2**8 * 11 * 13))
