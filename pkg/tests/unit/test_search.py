"""Tests for covering-number and primitivity searches and the sufficiency test."""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from src.coverings.arithmetic import factorize
from src.coverings.errors import SieveBudgetError
from src.coverings.search import (
    DivisorSearch,
    PrimitivityStatus,
    SearchOutcome,
    SearchStatus,
    is_covering_number,
    is_primitive_covering_number,
    sum_of_reciprocal_divisors,
    sun_sufficient,
)
from src.coverings.verify import is_covering


class TestDivisorSearch:
    """Tests for the search tree layout."""

    def test_divisors_largest_first(self):
        search = DivisorSearch(factorize(12))
        assert search.divisors == [12, 6, 4, 3, 2]
        assert search.capacity == 1 + 2 + 3 + 4 + 6
        assert search.branches() == [0, 1, 2, 3, 4]


class TestIsCoveringNumber:
    """Tests for is_covering_number."""

    def test_twelve_has_witness(self):
        outcome = is_covering_number(12)
        assert outcome.status is SearchStatus.COVERING_NUMBER
        assert outcome.witness is not None
        assert is_covering(outcome.witness).is_covering
        assert all(12 % m == 0 for m in outcome.witness.moduli)
        assert any(c.residue == 0 for c in outcome.witness)

    def test_six_exhausts_tree(self):
        outcome = is_covering_number(6)
        assert outcome.status is SearchStatus.NOT_COVERING_NUMBER
        assert outcome.witness is None
        assert outcome.nodes_explored > 1

    def test_sparse_divisors_settled_at_root(self):
        outcome = is_covering_number(10)
        assert outcome.status is SearchStatus.NOT_COVERING_NUMBER
        assert outcome.nodes_explored == 1

    def test_tiny_budget_is_unknown(self):
        outcome = is_covering_number(12, node_budget=1)
        assert outcome.status is SearchStatus.UNKNOWN
        assert outcome.nodes_explored == 1
        assert outcome.budget == 1

    def test_thread_count_does_not_change_answer(self):
        for n in (6, 12, 36):
            single = is_covering_number(n, threads=1)
            multi = is_covering_number(n, threads=3)
            assert single == multi

    def test_sieve_budget(self):
        with pytest.raises(SieveBudgetError):
            is_covering_number(12, sieve_budget=6)

    def test_witness_required_for_covering_number(self):
        with pytest.raises(ValidationError):
            SearchOutcome(
                L=12, status=SearchStatus.COVERING_NUMBER, nodes_explored=3, budget=5
            )


class TestPrimitivity:
    """Tests for is_primitive_covering_number."""

    def test_twelve_is_primitive(self):
        outcome = is_primitive_covering_number(12)
        assert outcome.status is PrimitivityStatus.PRIMITIVE
        checks = {c.divisor: c for c in outcome.divisor_checks}
        assert checks[6].status is SearchStatus.NOT_COVERING_NUMBER
        assert not checks[6].density_rejected
        assert checks[4].density_rejected
        assert checks[4].nodes_explored == 0

    def test_multiple_is_not_primitive(self):
        outcome = is_primitive_covering_number(24)
        assert outcome.status is PrimitivityStatus.NOT_PRIMITIVE
        assert outcome.witness_divisor == 12

    def test_non_covering_number(self):
        outcome = is_primitive_covering_number(10)
        assert outcome.status is PrimitivityStatus.NOT_COVERING_NUMBER
        assert outcome.divisor_checks == ()

    def test_budget_limited_is_unknown(self):
        outcome = is_primitive_covering_number(12, node_budget=1)
        assert outcome.status is PrimitivityStatus.UNKNOWN

    def test_sum_of_reciprocal_divisors(self):
        assert sum_of_reciprocal_divisors(6) == Fraction(1)
        assert sum_of_reciprocal_divisors(4) == Fraction(3, 4)


class TestSunSufficient:
    """Tests for the sufficiency test."""

    @pytest.mark.parametrize("n", [12, 24, 36, 80])
    def test_passes(self, n):
        assert sun_sufficient(n).holds

    @pytest.mark.parametrize(
        "n", [2**8 * 11 * 13, 2**14 * 17 * 19, 2**16 * 19 * 23, 2]
    )
    def test_fails(self, n):
        check = sun_sufficient(n)
        assert not check.holds
        assert check.failing_rows()

    def test_trace_rows(self):
        check = sun_sufficient(2**8 * 11 * 13)
        rows = [(r.prime, r.lhs, r.rhs, r.holds) for r in check.trace]
        assert rows == [(2, 1, 1, True), (11, 9, 10, False), (13, 18, 13, True)]

    def test_one_fails_without_rows(self):
        check = sun_sufficient(1)
        assert not check.holds
        assert check.trace == ()
