"""Run-time defaults and the validated run configuration."""

from pydantic import BaseModel, Field

# Signed 64-bit range for every integer except counting results.
INT_LIMIT = 2**63

DEFAULT_SIEVE_BUDGET = 2**28
DEFAULT_NODE_BUDGET = 5_000_000
DEFAULT_THREADS = 1


class RunConfig(BaseModel):
    """
    Execution settings shared by every command.

    Built from command-line flags; there are no configuration files or
    environment variables.
    """

    threads: int = Field(default=DEFAULT_THREADS, ge=1, description="Worker threads")
    sieve_budget: int = Field(
        default=DEFAULT_SIEVE_BUDGET,
        ge=1,
        description="Largest period an explicit residue sieve may allocate",
    )
    progress: bool = Field(default=False, description="Write progress to stderr")
