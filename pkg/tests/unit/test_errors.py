"""Tests for custom error classes."""

from pydantic import BaseModel, ValidationError

from src.coverings.errors import (
    BudgetExhaustedError,
    CommandNotFoundError,
    CorpusEntryNotFoundError,
    CoveringError,
    CoveringLoadError,
    DuplicateModulusError,
    FamilyHypothesisError,
    FormulaError,
    InvalidArgumentsError,
    LcmOverflowError,
    SieveBudgetError,
)


class TestCorpusEntryNotFoundError:
    """Test CorpusEntryNotFoundError."""

    def test_error_message_with_suggestions(self):
        """Test error message includes close match suggestions."""
        error = CorpusEntryNotFoundError("erdos21", ["erdos12", "exampleB", "C1"])
        error_msg = str(error)

        assert "erdos21" in error_msg
        assert "Did you mean" in error_msg
        assert "erdos12" in error_msg
        assert "Available entries (3)" in error_msg

    def test_error_message_no_suggestions(self):
        """Test error message when no close matches found."""
        error_msg = str(CorpusEntryNotFoundError("zzzz", ["erdos12", "C1"]))

        assert "Did you mean" not in error_msg
        assert "C1" in error_msg


class TestCommandNotFoundError:
    """Test CommandNotFoundError."""

    def test_suggestion(self):
        error = CommandNotFoundError("verfy", ["verify", "minimal"])
        assert "Did you mean: verify" in str(error)
        assert error.available == ["verify", "minimal"]


class TestSieveBudgetError:
    """Test SieveBudgetError."""

    def test_tip_for_is_covering(self):
        error = SieveBudgetError(2**40, 2**28, "is_covering")
        assert "Tip: use the crt_tree strategy" in str(error)

    def test_no_tip_elsewhere(self):
        assert "Tip" not in str(SieveBudgetError(100, 10, "is_minimal"))


class TestMessages:
    """Messages carry the offending values."""

    def test_duplicate_modulus(self):
        msg = str(DuplicateModulusError(12, line=4))
        assert "Duplicate modulus 12 (line 4)" in msg
        assert "pairwise distinct" in msg

    def test_lcm_overflow_preview(self):
        msg = str(LcmOverflowError(list(range(2, 20)), 2**63))
        assert "Moduli (18)" in msg
        assert "..." in msg

    def test_family_hypothesis(self):
        error = FamilyHypothesisError([3, 5], "p_1 = 2", "first prime is 3")
        assert error.hypothesis == "p_1 = 2"
        assert "first prime is 3" in str(error)

    def test_formula_inputs_listed(self):
        msg = str(FormulaError("inexact division", {"L": 80, "size_Q": 4}))
        assert "inexact division" in msg
        assert "L: 80" in msg
        assert "size_Q: 4" in msg

    def test_budget_exhausted(self):
        msg = str(BudgetExhaustedError("enumerate_coverings", 100))
        assert "100 search nodes" in msg
        assert "--budget" in msg

    def test_load_error_line(self):
        assert str(CoveringLoadError("bad", line=7)) == "line 7: bad"

    def test_hierarchy(self):
        assert issubclass(CoveringLoadError, CoveringError)
        assert issubclass(SieveBudgetError, CoveringError)


class TestInvalidArgumentsError:
    """Test InvalidArgumentsError."""

    def test_validation_details(self):
        """Test error message lists validation errors and arguments."""

        class Schema(BaseModel):
            n: int

        try:
            Schema(n="abc")
        except ValidationError as e:
            error = InvalidArgumentsError(
                command_name="sun-check",
                schema=Schema,
                arguments={"n": "abc", "note": "x" * 200},
                validation_error=e,
            )

        msg = str(error)
        assert "sun-check" in msg
        assert "Schema: Schema" in msg
        assert "n:" in msg
        assert "..." in msg
