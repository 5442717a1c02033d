"""Tests for covering verification, uncovered census and minimality."""

import random
from fractions import Fraction

import pytest
from pydantic import ValidationError

from src.coverings.errors import (
    EmptyInputError,
    NotACoveringError,
    SieveBudgetError,
    WindowError,
)
from src.coverings.models import Congruence, CongruenceSet
from src.coverings.verify import (
    Strategy,
    VerificationReport,
    density,
    is_covering,
    is_minimal,
    sieve_covered,
    uncovered_set,
)

ERDOS = CongruenceSet.of([(0, 2), (0, 3), (1, 4), (1, 6), (11, 12)])
HALF = CongruenceSet.of([(1, 2), (0, 3)])
# density 5/12, moduli share a factor
SPARSE = CongruenceSet.of([(0, 4), (1, 6)])
DIVISORS_120 = [d for d in range(2, 121) if 120 % d == 0]


def random_sets(seed: int, count: int = 60):
    """Random congruence sets over divisors of 120, at least two members each."""
    rng = random.Random(seed)
    for _ in range(count):
        moduli = rng.sample(DIVISORS_120, rng.randint(2, 9))
        yield CongruenceSet.of((rng.randrange(m), m) for m in moduli)


class TestStrategy:
    """Tests for Strategy parsing."""

    def test_parse_alias(self):
        assert Strategy.parse("crt") is Strategy.CRT_TREE
        assert Strategy.parse("bitset") is Strategy.BITSET
        assert Strategy.parse(Strategy.AUTO) is Strategy.AUTO

    def test_parse_unknown(self):
        with pytest.raises(ValueError):
            Strategy.parse("brute")


class TestIsCovering:
    """Tests for is_covering."""

    @pytest.mark.parametrize("strategy", ["bitset", "crt", "auto"])
    def test_erdos_covering(self, strategy):
        report = is_covering(ERDOS, strategy=strategy)
        assert report.is_covering
        assert report.period == 12
        assert report.uncovered_count == 0
        assert report.smallest_uncovered is None

    @pytest.mark.parametrize("strategy", ["bitset", "crt"])
    @pytest.mark.parametrize("threads", [1, 3])
    def test_census_agrees_across_strategies(self, strategy, threads):
        report = is_covering(HALF, strategy=strategy, threads=threads)
        assert not report.is_covering
        assert report.period == 6
        assert report.uncovered_count == 2
        assert report.smallest_uncovered == 2

    @pytest.mark.parametrize("strategy", ["bitset", "crt"])
    def test_sparse_set_walks_the_period(self, strategy):
        report = is_covering(SPARSE, strategy=strategy, threads=2)
        assert (report.period, report.uncovered_count) == (12, 7)
        assert report.smallest_uncovered == 2

    def test_sparse_coprime_census_matches_sieve(self):
        C = CongruenceSet.of([(1, 3), (0, 5), (2, 7)])
        report = is_covering(C, sieve_budget=10)
        bare = ~sieve_covered(C.pairs(), 0, 105)

        assert not report.is_covering
        assert report.uncovered_count == int(bare.sum()) == 2 * 4 * 6
        assert report.smallest_uncovered == 3
        with pytest.raises(SieveBudgetError):
            is_covering(C, strategy="bitset", sieve_budget=10)

    def test_missing_congruence_detected(self):
        broken = ERDOS.without(Congruence(residue=11, modulus=12))
        for strategy in ("bitset", "crt"):
            report = is_covering(broken, strategy=strategy)
            assert report.uncovered_count == 1
            assert report.smallest_uncovered == 11

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            is_covering(CongruenceSet())

    def test_bitset_over_budget(self):
        with pytest.raises(SieveBudgetError, match="crt_tree"):
            is_covering(ERDOS, strategy="bitset", sieve_budget=10)

    def test_auto_falls_back_to_crt_tree(self):
        report = is_covering(ERDOS, strategy="auto", sieve_budget=10)
        assert report.is_covering


class TestVerificationReport:
    """Tests for the report's consistency checks."""

    def test_inconsistent_report_rejected(self):
        with pytest.raises(ValidationError):
            VerificationReport(is_covering=True, period=6, uncovered_count=1)
        with pytest.raises(ValidationError):
            VerificationReport(
                is_covering=False, period=6, uncovered_count=1, smallest_uncovered=6
            )


class TestUncoveredSet:
    """Tests for uncovered_set."""

    def test_basic_window(self):
        C = CongruenceSet.of([(0, 2), (0, 3)])
        assert uncovered_set(C, 6) == [1, 5]
        assert uncovered_set(C, 12) == [1, 5, 7, 11]

    def test_zero_maps_to_window(self):
        C = CongruenceSet.of([(1, 2)])
        assert uncovered_set(C, 4) == [2, 4]

    def test_covering_has_no_holes(self):
        assert uncovered_set(ERDOS, 12) == []

    def test_window_must_be_common_multiple(self):
        with pytest.raises(WindowError, match=r"\[3\]"):
            uncovered_set(CongruenceSet.of([(0, 2), (0, 3)]), 4)

    def test_window_budget(self):
        with pytest.raises(SieveBudgetError):
            uncovered_set(ERDOS, 12, sieve_budget=6)

    def test_sieve_covered_offset(self):
        mask = sieve_covered([(1, 4)], 4, 12)
        assert mask.tolist() == [False, True, False, False] * 2


class TestIsMinimal:
    """Tests for is_minimal."""

    def test_erdos_is_minimal(self):
        report = is_minimal(ERDOS)
        assert report.is_minimal
        assert report.removable == ()
        assert len(report.private_witness) == 5
        for entry in report.private_witness:
            others = ERDOS.without(entry.congruence)
            assert entry.congruence.covers(entry.witness)
            assert not any(c.covers(entry.witness) for c in others)

    def test_redundant_congruence_found(self):
        C = CongruenceSet.of(ERDOS.pairs() + [(0, 24)])
        report = is_minimal(C)
        assert not report.is_minimal
        assert report.removable == (Congruence(residue=0, modulus=24),)
        assert report.witness_for(Congruence(residue=0, modulus=24)) is None
        assert report.witness_for(Congruence(residue=0, modulus=2)) == 2

    def test_non_covering_rejected(self):
        with pytest.raises(NotACoveringError) as exc_info:
            is_minimal(CongruenceSet.of([(0, 2), (0, 3)]))
        assert exc_info.value.smallest_uncovered == 1

    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            is_minimal(CongruenceSet())


class TestDensity:
    """Tests for density and its bound on coverings."""

    def test_exact_values(self):
        assert density(ERDOS) == Fraction(4, 3)
        divisors_40 = CongruenceSet.of((0, d) for d in (2, 4, 5, 8, 10, 20, 40))
        assert density(divisors_40) == Fraction(5, 4)

    def test_density_below_one_never_covers(self):
        sparse = [C for C in random_sets(seed=7, count=200) if density(C) < 1]
        assert sparse
        for C in sparse:
            assert not is_covering(C).is_covering


class TestCoveringProperties:
    """Shift invariance and monotonicity of is_covering."""

    @pytest.mark.parametrize("k", [1, 5, -7, 119])
    def test_shift_keeps_census(self, k):
        for C in list(random_sets(seed=11, count=40)) + [ERDOS]:
            before = is_covering(C)
            after = is_covering(C.shifted(k), strategy="crt")
            assert after.is_covering == before.is_covering
            assert after.uncovered_count == before.uncovered_count
            assert after.period == before.period

    def test_removal_never_shrinks_holes(self):
        for C in list(random_sets(seed=13, count=40)) + [ERDOS]:
            report = is_covering(C)
            share = Fraction(report.uncovered_count, report.period)
            for c in C:
                smaller = is_covering(C.without(c))
                assert Fraction(smaller.uncovered_count, smaller.period) >= share
                if not report.is_covering:
                    assert not smaller.is_covering

    def test_strategies_agree_on_random_sets(self):
        for C in random_sets(seed=17, count=40):
            assert is_covering(C, strategy="bitset") == is_covering(
                C, strategy="crt", threads=3
            )
