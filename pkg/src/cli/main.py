"""CLI entry point: ``coverings <command> [options]``."""

import argparse
import json
import sys
from typing import List, Optional

from pydantic import ValidationError

from .. import __version__
from ..coverings.config import DEFAULT_SIEVE_BUDGET, DEFAULT_THREADS, RunConfig
from ..coverings.errors import CoveringError
from . import commands  # noqa: F401  registers every command
from .registry import CommandRegistry

EXIT_ERROR = 2


def build_parser(registry: Optional[CommandRegistry] = None) -> argparse.ArgumentParser:
    """One subparser per registered command, each sharing the run flags."""
    registry = registry or CommandRegistry.get_instance()

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--threads",
        type=int,
        default=DEFAULT_THREADS,
        help="Worker threads for sieves and searches",
    )
    common.add_argument(
        "--sieve-budget",
        type=int,
        default=DEFAULT_SIEVE_BUDGET,
        help=f"Largest period an explicit sieve may allocate "
        f"(default: {DEFAULT_SIEVE_BUDGET})",
    )
    common.add_argument(
        "--progress", action="store_true", help="Report progress on stderr"
    )

    parser = argparse.ArgumentParser(
        prog="coverings",
        description="Verify, analyse, count and construct covering systems",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name in registry.list_commands():
        command_class = registry.get_or_raise(name)
        sub = subparsers.add_parser(
            name,
            parents=[common],
            help=command_class.description,
            description=command_class.description,
        )
        command_class.add_arguments(sub)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse, execute, print the JSON report, and return the exit code."""
    registry = CommandRegistry.get_instance()
    parser = build_parser(registry)
    args = parser.parse_args(argv)

    try:
        config = RunConfig(
            threads=args.threads,
            sieve_budget=args.sieve_budget,
            progress=args.progress,
        )
        arguments = {
            key: value
            for key, value in vars(args).items()
            if key not in {"command", "threads", "sieve_budget", "progress"}
        }
        instance = registry.get_or_raise(args.command)()
        result = instance.execute(arguments, config)
    except ValidationError as e:
        print(f"\033[91mError: invalid run options\n{e}\033[0m", file=sys.stderr)
        return EXIT_ERROR
    except CoveringError as e:
        print(f"\033[91mError: {e}\033[0m", file=sys.stderr)
        return EXIT_ERROR

    print(json.dumps(result.to_output(), indent=2, sort_keys=True))
    return result.verdict.exit_code


def main() -> None:
    """Console-script entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
