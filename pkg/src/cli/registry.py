"""Command Registry - registration and discovery of CLI commands."""

from typing import Dict, List, Optional, Type

from ..coverings.errors import CommandNotFoundError
from .base import Command


class CommandRegistry:
    """
    Registry for command classes.

    Allows registration and lookup of commands by name.

    Example:
        registry = CommandRegistry()

        @registry.register
        class VerifyCommand(Command):
            name = "verify"
            ...

        command = registry.get_or_raise("verify")()
    """

    _instance: Optional["CommandRegistry"] = None

    def __init__(self) -> None:
        self._commands: Dict[str, Type[Command]] = {}

    @classmethod
    def get_instance(cls) -> "CommandRegistry":
        """Get the global registry instance."""
        if cls._instance is None:
            cls._instance = cls()
        return cls._instance

    def register(self, command_class: Type[Command]) -> Type[Command]:
        """
        Register a command class; usable as a decorator.

        Raises:
            TypeError: If the class is not a Command
            ValueError: If the name is taken
        """
        if not issubclass(command_class, Command):
            raise TypeError(f"{command_class} must be a subclass of Command")

        name = command_class.name
        if name in self._commands:
            raise ValueError(f"Command '{name}' is already registered")

        self._commands[name] = command_class
        return command_class

    def get(self, name: str) -> Optional[Type[Command]]:
        """Get a command class by name."""
        return self._commands.get(name)

    def get_or_raise(self, name: str) -> Type[Command]:
        """Get a command class by name, raising with suggestions if not found."""
        command_class = self.get(name)
        if command_class is None:
            raise CommandNotFoundError(name, self.list_commands())
        return command_class

    def list_commands(self) -> List[str]:
        """List all registered command names, in registration order."""
        return list(self._commands.keys())

    def clear(self) -> None:
        """Clear all registered commands (mainly for testing)."""
        self._commands.clear()

    def __contains__(self, name: str) -> bool:
        return name in self._commands

    def __len__(self) -> int:
        return len(self._commands)


def command(cls: Type[Command]) -> Type[Command]:
    """
    Decorator to register a command with the global registry.

    Example:
        @command
        class VerifyCommand(Command):
            name = "verify"
            ...
    """
    return CommandRegistry.get_instance().register(cls)
