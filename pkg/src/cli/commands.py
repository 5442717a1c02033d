"""The command set of the ``coverings`` CLI."""

import argparse
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import Field, field_validator

from ..coverings.arithmetic import factorize
from ..coverings.config import DEFAULT_NODE_BUDGET, RunConfig
from ..coverings.construct import (
    DEFAULT_SEARCH_LIMIT,
    build_counterexample_covering,
    counterexample_report,
    find_counterexample_primes,
    sun_primitive,
)
from ..coverings.corpus import CorpusEntry, corpus, corpus_entry
from ..coverings.count import (
    count_by_enumeration,
    count_by_formula,
    enumerate_coverings,
)
from ..coverings.errors import CoveringLoadError
from ..coverings.loader import (
    load_covering_file,
    load_moduli_file,
    serialize_covering,
)
from ..coverings.models import CongruenceSet
from ..coverings.search import (
    PrimitivityStatus,
    SearchStatus,
    is_covering_number,
    is_primitive_covering_number,
    sun_sufficient,
)
from ..coverings.structure import check_hole_lemmas, lambda_table, partition
from ..coverings.verify import Strategy, is_covering, is_minimal
from .base import Command, CommandArguments, CommandResult, Verdict
from .registry import command
from .validation import validate_arguments


def congruence_pairs(C: CongruenceSet) -> List[List[int]]:
    """Compact JSON form of a congruence set: ``[[x, m], ...]``."""
    return [[c.residue, c.modulus] for c in C]


def _add_budget(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_NODE_BUDGET,
        help=f"Search-tree node limit (default: {DEFAULT_NODE_BUDGET})",
    )


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise CoveringLoadError(f"Failed to write {path}: {e}")


class FileArguments(CommandArguments):
    file: str


class VerifyArguments(FileArguments):
    strategy: Literal["bitset", "crt", "crt_tree", "auto"] = "auto"


@command
class VerifyCommand(Command):
    name = "verify"
    description = "Check that a congruence set covers every integer"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("file", help="Covering file (line or structured format)")
        parser.add_argument(
            "--strategy", choices=["bitset", "crt", "auto"], default="auto"
        )

    @validate_arguments(VerifyArguments)
    def execute(self, arguments: Dict[str, Any], config: RunConfig) -> CommandResult:
        C = load_covering_file(arguments["file"])
        report = is_covering(
            C,
            strategy=Strategy.parse(arguments["strategy"]),
            sieve_budget=config.sieve_budget,
            threads=config.threads,
            show_progress=config.progress,
        )
        verdict = Verdict.AFFIRMATIVE if report.is_covering else Verdict.NEGATIVE
        return self.result(verdict, report.model_dump(mode="json"))


@command
class MinimalCommand(Command):
    name = "minimal"
    description = "Check that no single congruence of a covering is redundant"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("file", help="Covering file")

    @validate_arguments(FileArguments)
    def execute(self, arguments: Dict[str, Any], config: RunConfig) -> CommandResult:
        C = load_covering_file(arguments["file"])
        report = is_minimal(C, sieve_budget=config.sieve_budget)
        verdict = Verdict.AFFIRMATIVE if report.is_minimal else Verdict.NEGATIVE
        return self.result(verdict, report.model_dump(mode="json"))


class LambdaArguments(FileArguments):
    lcm: int = Field(..., ge=1)


@command
class LambdaCommand(Command):
    """Affirmative when the last hole count is zero, i.e. the set covers."""

    name = "lambda"
    description = "Prime-power cells, hole counts and single-hole identities"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("file", help="Covering file")
        parser.add_argument("--lcm", type=int, required=True, help="Reference L")

    @validate_arguments(LambdaArguments)
    def execute(self, arguments: Dict[str, Any], config: RunConfig) -> CommandResult:
        C = load_covering_file(arguments["file"])
        L = factorize(arguments["lcm"])
        table = lambda_table(C, L, sieve_budget=config.sieve_budget)
        covers = table.final_holes == 0
        minimal = is_minimal(C, config.sieve_budget).is_minimal if covers else None
        records = check_hole_lemmas(table, minimal=minimal)
        cells = partition(C, L).cells
        report = {
            "L": L.value,
            "factorization": str(L),
            "minimal": minimal,
            "cells": [
                {
                    "s": c.s,
                    "t": c.t,
                    "prime": c.prime,
                    "congruences": [[x.residue, x.modulus] for x in c.congruences],
                }
                for c in cells
            ],
            "lambda": [e.model_dump(mode="json") for e in table.entries],
            "hole_records": [r.model_dump(mode="json") for r in records],
        }
        return self.result(Verdict.AFFIRMATIVE if covers else Verdict.NEGATIVE, report)


class ModuliArguments(CommandArguments):
    moduli: str
    budget: int = Field(default=DEFAULT_NODE_BUDGET, ge=1)


class CountArguments(ModuliArguments):
    brute: bool = False
    assert_minimal: bool = False


@command
class CountCommand(Command):
    name = "count"
    description = "Count the coverings with a given moduli set"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--moduli", required=True, help="Moduli file")
        parser.add_argument(
            "--brute", action="store_true", help="Count by exhaustive enumeration"
        )
        parser.add_argument(
            "--assert-minimal",
            action="store_true",
            help="Trust that the moduli set is minimal instead of confirming it",
        )
        _add_budget(parser)

    @validate_arguments(CountArguments)
    def execute(self, arguments: Dict[str, Any], config: RunConfig) -> CommandResult:
        M = load_moduli_file(arguments["moduli"])
        if arguments["brute"]:
            result = count_by_enumeration(
                M,
                node_budget=arguments["budget"],
                sieve_budget=config.sieve_budget,
                threads=config.threads,
                show_progress=config.progress,
            )
        else:
            result = count_by_formula(
                M,
                assert_minimal=arguments["assert_minimal"],
                node_budget=arguments["budget"],
                sieve_budget=config.sieve_budget,
                threads=config.threads,
            )
        if result.count is None:
            verdict = Verdict.UNDECIDED
        else:
            verdict = Verdict.AFFIRMATIVE if result.count > 0 else Verdict.NEGATIVE
        report = result.model_dump(mode="json")
        # counts outgrow JSON number precision in most readers
        report["count"] = None if result.count is None else str(result.count)
        return self.result(verdict, report)


class EnumerateArguments(ModuliArguments):
    limit: Optional[int] = Field(default=None, ge=1)


@command
class EnumerateCommand(Command):
    name = "enumerate"
    description = "List coverings with a given moduli set in lexicographic order"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--moduli", required=True, help="Moduli file")
        parser.add_argument("--limit", type=int, default=None, help="Stop after k")
        _add_budget(parser)

    @validate_arguments(EnumerateArguments)
    def execute(self, arguments: Dict[str, Any], config: RunConfig) -> CommandResult:
        M = load_moduli_file(arguments["moduli"])
        coverings = enumerate_coverings(
            M,
            limit=arguments["limit"],
            node_budget=arguments["budget"],
            sieve_budget=config.sieve_budget,
            threads=config.threads,
        )
        report = {
            "moduli": list(M.moduli),
            "count": len(coverings),
            "coverings": [congruence_pairs(C) for C in coverings],
        }
        return self.result(
            Verdict.AFFIRMATIVE if coverings else Verdict.NEGATIVE, report
        )


class NumberArguments(CommandArguments):
    n: int = Field(..., ge=1)


class SearchArguments(NumberArguments):
    budget: int = Field(default=DEFAULT_NODE_BUDGET, ge=1)


@command
class CoveringNumberCommand(Command):
    name = "is-covering-number"
    description = "Search for a covering with distinct divisors > 1 of n"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("n", type=int)
        _add_budget(parser)

    @validate_arguments(SearchArguments)
    def execute(self, arguments: Dict[str, Any], config: RunConfig) -> CommandResult:
        outcome = is_covering_number(
            arguments["n"],
            node_budget=arguments["budget"],
            sieve_budget=config.sieve_budget,
            threads=config.threads,
            show_progress=config.progress,
        )
        verdict = {
            SearchStatus.COVERING_NUMBER: Verdict.AFFIRMATIVE,
            SearchStatus.NOT_COVERING_NUMBER: Verdict.NEGATIVE,
            SearchStatus.UNKNOWN: Verdict.UNDECIDED,
        }[outcome.status]
        report = outcome.model_dump(mode="json", exclude={"witness"})
        report["witness"] = (
            congruence_pairs(outcome.witness) if outcome.witness is not None else None
        )
        return self.result(verdict, report)


@command
class PrimitiveCommand(Command):
    name = "is-primitive"
    description = "Decide whether n is a primitive covering number"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("n", type=int)
        _add_budget(parser)

    @validate_arguments(SearchArguments)
    def execute(self, arguments: Dict[str, Any], config: RunConfig) -> CommandResult:
        outcome = is_primitive_covering_number(
            arguments["n"],
            node_budget=arguments["budget"],
            sieve_budget=config.sieve_budget,
            threads=config.threads,
            show_progress=config.progress,
        )
        verdict = {
            PrimitivityStatus.PRIMITIVE: Verdict.AFFIRMATIVE,
            PrimitivityStatus.NOT_PRIMITIVE: Verdict.NEGATIVE,
            PrimitivityStatus.NOT_COVERING_NUMBER: Verdict.NEGATIVE,
            PrimitivityStatus.UNKNOWN: Verdict.UNDECIDED,
        }[outcome.status]
        report = outcome.model_dump(mode="json", exclude={"covering": {"witness"}})
        witness = outcome.covering.witness
        report["covering"]["witness"] = (
            congruence_pairs(witness) if witness is not None else None
        )
        return self.result(verdict, report)


@command
class SunCheckCommand(Command):
    name = "sun-check"
    description = "Evaluate the sufficiency test for covering numbers"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("n", type=int)

    @validate_arguments(NumberArguments)
    def execute(self, arguments: Dict[str, Any], config: RunConfig) -> CommandResult:
        check = sun_sufficient(arguments["n"])
        verdict = Verdict.AFFIRMATIVE if check.holds else Verdict.NEGATIVE
        return self.result(verdict, check.model_dump(mode="json"))


class PrimesArguments(CommandArguments):
    primes: List[int]

    @field_validator("primes", mode="before")
    @classmethod
    def split_primes(cls, v: Any) -> Any:
        """Accept the comma-separated flag value."""
        if isinstance(v, str):
            return [p.strip() for p in v.split(",") if p.strip()]
        return v


@command
class SunGenerateCommand(Command):
    name = "sun-generate"
    description = "Build the primitive covering number for a prime list"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--primes", required=True, help="e.g. 2,3,7")

    @validate_arguments(PrimesArguments)
    def execute(self, arguments: Dict[str, Any], config: RunConfig) -> CommandResult:
        member = sun_primitive(arguments["primes"])
        report = member.model_dump(mode="json")
        report["factorization"] = str(member.value)
        return self.result(Verdict.AFFIRMATIVE, report)


class CounterexampleArguments(CommandArguments):
    delta: int = Field(..., ge=3)
    index: int = Field(default=1, ge=1)
    search_limit: int = Field(default=DEFAULT_SEARCH_LIMIT, ge=2)
    emit: Optional[str] = None
    check_primitive: bool = False
    budget: int = Field(default=DEFAULT_NODE_BUDGET, ge=1)


@command
class CounterexampleCommand(Command):
    name = "counterexample"
    description = "Build and check a covering whose L fails the sufficiency test"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--delta", type=int, required=True)
        parser.add_argument(
            "--index", type=int, default=1, help="Which qualifying pair, from 1"
        )
        parser.add_argument("--search-limit", type=int, default=DEFAULT_SEARCH_LIMIT)
        parser.add_argument("--emit", help="Write the covering to this file")
        parser.add_argument(
            "--check-primitive",
            action="store_true",
            help="Also run a budget-limited primitivity search on L",
        )
        _add_budget(parser)

    @validate_arguments(CounterexampleArguments)
    def execute(self, arguments: Dict[str, Any], config: RunConfig) -> CommandResult:
        plan = find_counterexample_primes(
            arguments["delta"], arguments["search_limit"], index=arguments["index"]
        )
        report = counterexample_report(
            plan,
            primitivity_budget=arguments["budget"]
            if arguments["check_primitive"]
            else None,
            sieve_budget=config.sieve_budget,
            threads=config.threads,
        )
        if arguments["emit"]:
            covering = build_counterexample_covering(plan)
            _write(arguments["emit"], serialize_covering(covering))
        return self.result(Verdict.AFFIRMATIVE, report.model_dump(mode="json"))


class CorpusArguments(CommandArguments):
    name: Optional[str] = None
    emit: bool = False


def _describe(entry: CorpusEntry, emit: bool) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "name": entry.name,
        "kind": entry.kind.value,
        "L": entry.L.value,
        "factorization": str(entry.L),
        "provenance": entry.provenance,
        "is_covering": entry.is_covering,
        "minimal": entry.minimal,
        "size": len(entry.moduli_set),
    }
    if emit:
        if entry.covering is not None:
            data["text"] = serialize_covering(entry.covering)
        else:
            data["text"] = "".join(f"{m}\n" for m in entry.moduli_set)
    return data


@command
class CorpusCommand(Command):
    name = "corpus"
    description = "List the embedded reference coverings and moduli sets"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--name", help="Show one entry")
        parser.add_argument(
            "--emit", action="store_true", help="Include entries in file format"
        )

    @validate_arguments(CorpusArguments)
    def execute(self, arguments: Dict[str, Any], config: RunConfig) -> CommandResult:
        if arguments["name"]:
            entry = corpus_entry(arguments["name"])
            return self.result(
                Verdict.AFFIRMATIVE, {"entry": _describe(entry, arguments["emit"])}
            )
        entries = [_describe(e, arguments["emit"]) for e in corpus()]
        return self.result(Verdict.AFFIRMATIVE, {"entries": entries})
