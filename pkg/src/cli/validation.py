"""Argument validation decorator for commands."""

from functools import wraps
from typing import Any, Callable, Dict, Type, TypeVar, cast

from pydantic import BaseModel, ValidationError

from ..coverings.config import RunConfig
from ..coverings.errors import InvalidArgumentsError
from .base import CommandResult

F = TypeVar("F", bound=Callable[..., Any])


def validate_arguments(schema: Type[BaseModel]) -> Callable[[F], F]:
    """
    Decorator to validate command arguments against a Pydantic schema.

    The command receives the validated, normalized arguments as a dict.
    Raises InvalidArgumentsError with every validation error if parsing fails.

    Example:
        class CountArguments(CommandArguments):
            moduli: str
            budget: int = Field(default=DEFAULT_NODE_BUDGET, ge=1)

        class CountCommand(Command):
            name = "count"

            @validate_arguments(CountArguments)
            def execute(self, arguments, config):
                ...
    """

    def decorator(func: F) -> F:
        @wraps(func)
        def wrapper(
            self: Any, arguments: Dict[str, Any], config: RunConfig
        ) -> CommandResult:
            try:
                validated = schema(**arguments).model_dump()
            except ValidationError as e:
                raise InvalidArgumentsError(
                    command_name=self.name,
                    schema=schema,
                    arguments=arguments,
                    validation_error=e,
                ) from e

            result: CommandResult = func(self, validated, config)
            return result

        return cast(F, wrapper)

    return decorator
