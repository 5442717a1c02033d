"""Covering systems: verification, structure, counting, search and constructions."""

from .arithmetic import divisors, factorize, lcm_of, normalize
from .config import DEFAULT_NODE_BUDGET, DEFAULT_SIEVE_BUDGET, RunConfig
from .construct import (
    CounterexampleReport,
    CounterexamplePlan,
    SunFamilyMember,
    build_counterexample_covering,
    counterexample_report,
    find_counterexample_primes,
    is_sun_family,
    iter_counterexample_plans,
    sun_family_member,
    sun_primitive,
)
from .corpus import CorpusEntry, corpus, corpus_entry
from .count import (
    CountResult,
    FormulaInputs,
    MinimalityStatus,
    count_by_enumeration,
    count_by_formula,
    enumerate_coverings,
    formula_inputs,
    is_minimal_moduli_set,
)
from .errors import CoveringError
from .loader import (
    CoveringLoader,
    load_covering_file,
    load_moduli_file,
    parse_covering,
    parse_moduli,
    serialize_covering,
)
from .models import Congruence, CongruenceSet, FactoredInteger, ModuliSet
from .search import (
    PrimitivityOutcome,
    PrimitivityStatus,
    SearchOutcome,
    SearchStatus,
    SunCheck,
    is_covering_number,
    is_primitive_covering_number,
    sun_sufficient,
)
from .structure import (
    LambdaTable,
    PartitionTable,
    check_hole_lemmas,
    forced_cell_sizes,
    lambda_table,
    partition,
    required_divisors,
)
from .verify import (
    MinimalityReport,
    Strategy,
    VerificationReport,
    density,
    is_covering,
    is_minimal,
    uncovered_set,
)

__all__ = [
    "Congruence",
    "CongruenceSet",
    "FactoredInteger",
    "ModuliSet",
    "CoveringError",
    "RunConfig",
    "DEFAULT_NODE_BUDGET",
    "DEFAULT_SIEVE_BUDGET",
    "factorize",
    "lcm_of",
    "divisors",
    "normalize",
    "Strategy",
    "VerificationReport",
    "MinimalityReport",
    "is_covering",
    "uncovered_set",
    "is_minimal",
    "density",
    "PartitionTable",
    "LambdaTable",
    "partition",
    "lambda_table",
    "check_hole_lemmas",
    "required_divisors",
    "forced_cell_sizes",
    "FormulaInputs",
    "CountResult",
    "MinimalityStatus",
    "formula_inputs",
    "count_by_formula",
    "count_by_enumeration",
    "enumerate_coverings",
    "is_minimal_moduli_set",
    "SearchOutcome",
    "SearchStatus",
    "PrimitivityOutcome",
    "PrimitivityStatus",
    "SunCheck",
    "is_covering_number",
    "is_primitive_covering_number",
    "sun_sufficient",
    "SunFamilyMember",
    "CounterexamplePlan",
    "CounterexampleReport",
    "sun_primitive",
    "sun_family_member",
    "is_sun_family",
    "iter_counterexample_plans",
    "find_counterexample_primes",
    "build_counterexample_covering",
    "counterexample_report",
    "CorpusEntry",
    "corpus",
    "corpus_entry",
    "CoveringLoader",
    "parse_covering",
    "serialize_covering",
    "parse_moduli",
    "load_covering_file",
    "load_moduli_file",
]
