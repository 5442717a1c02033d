"""Base Command class - foundation for every CLI command."""

import argparse
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict

from ..coverings.config import RunConfig


class Verdict(str, Enum):
    """Outcome class of a command, mapped onto the process exit code."""

    AFFIRMATIVE = "affirmative"
    NEGATIVE = "negative"
    UNDECIDED = "undecided"

    @property
    def exit_code(self) -> int:
        return {"affirmative": 0, "negative": 1, "undecided": 2}[self.value]


class CommandArguments(BaseModel):
    """Base class for command arguments."""

    model_config = ConfigDict(extra="ignore")


class CommandResult(BaseModel):
    """
    Everything a command prints.

    ``report`` is plain JSON data; it carries no timings, so reruns produce
    identical output.
    """

    command: str
    verdict: Verdict
    report: Dict[str, Any]

    def to_output(self) -> Dict[str, Any]:
        return {"command": self.command, "verdict": self.verdict.value, **self.report}


class Command(ABC):
    """
    Base class for all commands.

    A Command wraps one library operation: it declares its flags, validates
    them, calls the library and turns the answer into a report and a verdict.

    Example:
        class SunCheckCommand(Command):
            name = "sun-check"
            description = "Evaluate the sufficiency test for L"

            @classmethod
            def add_arguments(cls, parser):
                parser.add_argument("n", type=int)

            def execute(self, arguments, config):
                check = sun_sufficient(arguments["n"])
                ...
    """

    name: str = "base_command"
    description: str = ""

    @classmethod
    @abstractmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        """Declare the command's flags and positionals."""
        pass

    @abstractmethod
    def execute(self, arguments: Dict[str, Any], config: RunConfig) -> CommandResult:
        """
        Run the command.

        Args:
            arguments: Parsed command-line arguments
            config: Shared execution settings

        Returns:
            CommandResult with report and verdict
        """
        pass

    def result(
        self, verdict: Verdict, report: Optional[Dict[str, Any]] = None
    ) -> CommandResult:
        return CommandResult(command=self.name, verdict=verdict, report=report or {})

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} name='{self.name}'>"
