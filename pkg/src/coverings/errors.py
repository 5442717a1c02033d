"""Custom exceptions for covering-system operations with enhanced error context."""

from difflib import get_close_matches
from typing import Any, Dict, List, Optional, Sequence, Type

from pydantic import BaseModel, ValidationError


class CoveringError(Exception):
    """Base exception for covering-system errors."""

    pass


class ModulusError(CoveringError):
    """Raised when a modulus is smaller than 2."""

    def __init__(self, modulus: int, context: Optional[str] = None):
        self.modulus = modulus
        self.context = context

        message = f"Invalid modulus {modulus}: moduli must be at least 2"
        if context:
            message += f" ({context})"
        super().__init__(message)


class DuplicateModulusError(CoveringError):
    """Raised when two congruences (or moduli) share a modulus."""

    def __init__(self, modulus: int, line: Optional[int] = None):
        self.modulus = modulus
        self.line = line

        message = f"Duplicate modulus {modulus}"
        if line is not None:
            message += f" (line {line})"
        message += "\n\nTip: moduli in a covering must be pairwise distinct.\n"
        super().__init__(message)


class ValueRangeError(CoveringError):
    """Raised when an integer falls outside the supported signed 64-bit range."""

    def __init__(self, value: int, lower: int, upper: int):
        self.value = value
        self.lower = lower
        self.upper = upper
        super().__init__(
            f"Value {value} outside supported range [{lower}, {upper})"
        )


class LcmOverflowError(CoveringError):
    """
    Raised when a least common multiple leaves the signed 64-bit range.
    """

    def __init__(self, moduli: Sequence[int], limit: int):
        self.moduli = list(moduli)
        self.limit = limit

        preview = ", ".join(str(m) for m in self.moduli[:10])
        if len(self.moduli) > 10:
            preview += ", ..."

        message = f"lcm of moduli exceeds {limit}\n"
        message += f"  Moduli ({len(self.moduli)}): {preview}\n"
        super().__init__(message)


class EmptyInputError(CoveringError):
    """Raised when an operation needs at least one congruence or modulus."""

    def __init__(self, what: str):
        self.what = what
        super().__init__(f"{what} must not be empty")


class SieveBudgetError(CoveringError):
    """
    Raised when a period is too large for an explicit residue sieve.
    """

    def __init__(self, period: int, budget: int, operation: str):
        self.period = period
        self.budget = budget
        self.operation = operation

        message = f"Period {period} exceeds the sieve budget of {budget} residues\n"
        message += f"  Operation: {operation}\n"
        if operation == "is_covering":
            message += "\nTip: use the crt_tree strategy for large periods.\n"
        super().__init__(message)


class WindowError(CoveringError):
    """Raised when a census window is not a common multiple of the moduli."""

    def __init__(self, window: int, offending: List[int]):
        self.window = window
        self.offending = offending
        super().__init__(
            f"Window {window} is not divisible by moduli {offending}"
        )


class NotACoveringError(CoveringError):
    """Raised when an operation requires a covering but got a non-covering."""

    def __init__(self, smallest_uncovered: Optional[int], operation: str):
        self.smallest_uncovered = smallest_uncovered
        self.operation = operation

        message = f"{operation} requires a covering\n"
        if smallest_uncovered is not None:
            message += f"  Smallest uncovered integer: {smallest_uncovered}\n"
        super().__init__(message)


class ModulusNotDividingError(CoveringError):
    """Raised when a modulus does not divide the reference integer L."""

    def __init__(self, modulus: int, value: int):
        self.modulus = modulus
        self.value = value
        super().__init__(f"Modulus {modulus} does not divide L = {value}")


class FamilyHypothesisError(CoveringError):
    """
    Raised when a prime list violates a hypothesis of the primitive family.

    Names the hypothesis that failed so callers can report it verbatim.
    """

    def __init__(self, primes: Sequence[int], hypothesis: str, detail: str):
        self.primes = list(primes)
        self.hypothesis = hypothesis
        self.detail = detail

        message = f"Primes {self.primes} violate hypothesis '{hypothesis}'\n"
        message += f"  {detail}\n"
        super().__init__(message)


class FamilyShapeError(CoveringError):
    """Raised when L is not a member of the primitive covering family."""

    def __init__(self, value: int, reason: str):
        self.value = value
        self.reason = reason
        super().__init__(f"{value} is not a member of the primitive family: {reason}")


class FormulaError(CoveringError):
    """Raised when the closed counting formula cannot be applied soundly."""

    def __init__(self, reason: str, inputs: Optional[Dict[str, Any]] = None):
        self.reason = reason
        self.inputs = inputs or {}

        message = f"Counting formula not applicable: {reason}\n"
        for key, value in sorted(self.inputs.items()):
            message += f"  {key}: {value}\n"
        super().__init__(message)


class CounterexampleSearchError(CoveringError):
    """Raised when the prime-pair scan reaches its limit without a result."""

    def __init__(self, delta: int, search_limit: int, index: int):
        self.delta = delta
        self.search_limit = search_limit
        self.index = index

        message = (
            f"No qualifying prime pair #{index} for delta={delta} "
            f"below {search_limit}\n"
        )
        message += "\nTip: raise --search-limit.\n"
        super().__init__(message)


class BudgetExhaustedError(CoveringError):
    """Raised when an operation that must return a full answer runs out of nodes."""

    def __init__(self, operation: str, budget: int):
        self.operation = operation
        self.budget = budget

        message = f"{operation} exhausted its budget of {budget} search nodes\n"
        message += "\nTip: raise --budget or lower --limit.\n"
        super().__init__(message)


class InvariantBreachError(CoveringError):
    """
    Raised when a self-check of a constructed object fails.

    This signals a bug in the implementation, not a property of the input.
    """

    def __init__(self, check: str, detail: str):
        self.check = check
        self.detail = detail
        super().__init__(f"Invariant '{check}' violated: {detail}")


class CoveringLoadError(CoveringError):
    """Raised when a covering or moduli file cannot be loaded or parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CorpusEntryNotFoundError(CoveringError):
    """
    Raised when a corpus entry is not found.

    Provides suggestions for close matches and lists available entries.
    """

    def __init__(self, name: str, available: List[str]):
        self.name = name
        self.available = available

        suggestions = get_close_matches(name, available, n=3, cutoff=0.6)

        message = f"Corpus entry '{name}' not found\n\n"
        if suggestions:
            message += "Did you mean one of these?\n"
            for suggestion in suggestions:
                message += f"  - {suggestion}\n"
            message += "\n"

        message += f"Available entries ({len(available)}):\n"
        for entry in sorted(available):
            message += f"  - {entry}\n"

        super().__init__(message)


class CommandNotFoundError(CoveringError):
    """Raised when a CLI command is not registered."""

    def __init__(self, name: str, available: List[str]):
        self.name = name
        self.available = available

        suggestions = get_close_matches(name, available, n=3, cutoff=0.6)
        message = f"Command '{name}' not found\n"
        if suggestions:
            message += f"  Did you mean: {', '.join(suggestions)}\n"
        super().__init__(message)


class InvalidArgumentsError(CoveringError):
    """
    Raised when command argument validation fails.

    Provides detailed Pydantic validation errors.
    """

    def __init__(
        self,
        command_name: str,
        schema: Type[BaseModel],
        arguments: Dict[str, Any],
        validation_error: ValidationError,
    ):
        self.command_name = command_name
        self.schema = schema
        self.arguments = arguments
        self.validation_error = validation_error

        message = f"Invalid arguments for command '{command_name}'\n"
        message += f"  Schema: {schema.__name__}\n\n"

        message += "Validation errors:\n"
        for error in validation_error.errors():
            field = " -> ".join(str(loc) for loc in error["loc"])
            message += f"  - {field}: {error['msg']}\n"

        message += "\nArguments:\n"
        for key, value in sorted(arguments.items()):
            value_str = str(value)
            if len(value_str) > 100:
                value_str = value_str[:97] + "..."
            message += f"  {key}: {value_str}\n"

        super().__init__(message)
