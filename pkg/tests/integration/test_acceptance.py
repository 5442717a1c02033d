"""Acceptance checks against the published coverings, counts and constructions."""

import pytest

from src.cli.main import run
from src.coverings import (
    ModuliSet,
    build_counterexample_covering,
    check_hole_lemmas,
    corpus_entry,
    count_by_enumeration,
    count_by_formula,
    counterexample_report,
    enumerate_coverings,
    factorize,
    find_counterexample_primes,
    forced_cell_sizes,
    is_covering,
    is_covering_number,
    is_minimal,
    is_primitive_covering_number,
    iter_counterexample_plans,
    lambda_table,
    partition,
    required_divisors,
    sun_primitive,
    sun_sufficient,
)
from src.coverings.errors import SieveBudgetError
from src.coverings.models import Congruence
from src.coverings.search import PrimitivityStatus, SearchStatus

CORPUS_COVERINGS = ["erdos12", "exampleB", "exampleC", "exampleC_hat", "C1", "C2", "C3"]
M80 = ModuliSet.of([2, 4, 5, 8, 10, 16, 20, 40, 80])
M12 = ModuliSet.of([2, 3, 4, 6, 12])


class TestCorpusVerification:
    """Published coverings verify and carry the stated minimality."""

    @pytest.mark.parametrize("name", CORPUS_COVERINGS)
    def test_covers(self, name):
        entry = corpus_entry(name)
        report = is_covering(entry.covering, strategy="bitset")
        assert report.is_covering
        assert report.period == entry.L.value

    def test_minimality_claims(self):
        assert is_minimal(corpus_entry("exampleB").covering).is_minimal
        assert is_minimal(corpus_entry("exampleC_hat").covering).is_minimal

        report = is_minimal(corpus_entry("exampleC").covering)
        assert not report.is_minimal
        assert set(report.removable) == {
            Congruence(residue=0, modulus=40),
            Congruence(residue=0, modulus=120),
        }


class TestCounting:
    """The closed formula and the enumeration oracle agree."""

    def test_m80(self):
        assert count_by_formula(M80).count == 1920
        assert count_by_enumeration(M80).count == 1920

    def test_divisors_of_twelve(self):
        formula = count_by_formula(M12)
        assert formula.count == count_by_enumeration(M12).count == 24


class TestCoveringNumbers:
    """Exact covering-number and primitivity decisions."""

    def test_twelve_and_its_divisors(self):
        assert is_covering_number(12).status is SearchStatus.COVERING_NUMBER
        for d in (2, 3, 4, 6):
            assert is_covering_number(d).status is SearchStatus.NOT_COVERING_NUMBER
        assert is_primitive_covering_number(12).status is PrimitivityStatus.PRIMITIVE

    def test_forty_and_eighty(self):
        assert is_covering_number(40).status is SearchStatus.NOT_COVERING_NUMBER
        assert is_primitive_covering_number(80).status is PrimitivityStatus.PRIMITIVE


class TestSufficiency:
    """The sufficiency test on counterexamples and family members."""

    @pytest.mark.parametrize("n", [2**8 * 11 * 13, 2**14 * 17 * 19, 2**16 * 19 * 23])
    def test_counterexamples_fail(self, n):
        assert not sun_sufficient(n).holds

    @pytest.mark.parametrize("n", [12, 24, 36, 80])
    def test_covering_numbers_pass(self, n):
        assert sun_sufficient(n).holds

    @pytest.mark.parametrize("primes", [(2, 3), (2, 5), (2, 7), (2, 3, 7), (2, 3, 13)])
    def test_family_members_pass(self, primes):
        assert sun_sufficient(sun_primitive(primes).value).holds

    def test_passing_implies_covering_number_up_to_100(self):
        passing = [n for n in range(2, 101) if sun_sufficient(n).holds]
        assert 12 in passing and 80 in passing
        for n in passing:
            assert is_covering_number(n).status is SearchStatus.COVERING_NUMBER


class TestCounterexamples:
    """Reproduction of the three published counterexamples."""

    def test_first_three_pairs(self):
        plans = list(iter_counterexample_plans(3, search_limit=23))
        assert [s.L.value for s in plans] == [
            2**8 * 11 * 13,
            2**14 * 17 * 19,
            2**16 * 19 * 23,
        ]
        assert all(s.slack >= 1 for s in plans)

    @pytest.mark.parametrize("index", [1, 2, 3])
    def test_constructions_verify(self, index):
        report = counterexample_report(find_counterexample_primes(3, index=index))
        assert report.covering_verified
        assert not report.sun_sufficient
        assert report.unused_divisors

    def test_delta_four_uses_crt_tree(self):
        plan = find_counterexample_primes(4)
        C = build_counterexample_covering(plan)
        assert is_covering(C, strategy="crt").is_covering
        with pytest.raises(SieveBudgetError):
            is_covering(C, strategy="bitset")

    @pytest.mark.parametrize("delta", [4, 5])
    @pytest.mark.parametrize("index", [1, 2])
    def test_larger_deltas_verify(self, delta, index):
        plan = find_counterexample_primes(delta, index=index)
        C = build_counterexample_covering(plan)
        assert all(plan.L.value % m == 0 for m in C.moduli)
        assert not sun_sufficient(plan.L).holds
        assert is_covering(C, strategy="crt").is_covering


class TestStructure:
    """Cell and hole properties across enumerated coverings."""

    def test_m80_coverings(self):
        L = factorize(80)
        forced = forced_cell_sizes(L)
        assert set(required_divisors(L)) <= set(M80)

        for C in enumerate_coverings(M80, limit=100):
            table = lambda_table(C, L)
            assert table.final_holes == 0
            assert partition(C, L).is_exhaustive_and_disjoint(C)
            assert all(r.identity_held for r in check_hole_lemmas(table, True))
            for cell, size in forced.items():
                assert table.cell_size(*cell) == size


class TestDeterminism:
    """Reports do not depend on the thread count."""

    @pytest.mark.parametrize(
        "argv",
        [
            ["is-covering-number", "80"],
            ["is-primitive", "12"],
            ["counterexample", "--delta", "3"],
        ],
    )
    def test_thread_count(self, capsys, argv):
        run(argv + ["--threads", "1"])
        single = capsys.readouterr().out
        run(argv + ["--threads", "8"])
        assert capsys.readouterr().out == single

    def test_count_brute(self, capsys, tmp_path):
        path = tmp_path / "m80.txt"
        path.write_text("".join(f"{m}\n" for m in M80), encoding="utf-8")
        argv = ["count", "--moduli", str(path), "--brute"]
        run(argv + ["--threads", "1"])
        single = capsys.readouterr().out
        run(argv + ["--threads", "8"])
        assert capsys.readouterr().out == single
