"""ChunkExecutor - bounded parallel execution of independent work chunks."""

import asyncio
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Generic, List, Optional, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


@dataclass
class ChunkResult(Generic[R]):
    """Result of a single chunk."""

    index: int
    value: Optional[R] = None
    error: Optional[BaseException] = None
    duration_ms: float = 0.0

    @property
    def success(self) -> bool:
        """Check if the chunk completed without raising."""
        return self.error is None


@dataclass
class ChunkResults(Generic[R]):
    """Aggregated chunk results, in submission order."""

    results: List[ChunkResult[R]] = field(default_factory=list)
    total_duration_ms: float = 0.0

    @property
    def total(self) -> int:
        """Number of chunks."""
        return len(self.results)

    @property
    def failure_count(self) -> int:
        """Number of chunks that raised."""
        return sum(1 for r in self.results if not r.success)

    @property
    def slowest_ms(self) -> float:
        """Longest single chunk, 0.0 without chunks."""
        return max((r.duration_ms for r in self.results), default=0.0)

    def summary(self) -> str:
        """One progress line: chunk counts and timings."""
        return (
            f"Completed: {self.total - self.failure_count} ok, "
            f"{self.failure_count} failed, {self.total_duration_ms:.0f}ms "
            f"(slowest chunk {self.slowest_ms:.0f}ms)"
        )

    def values(self) -> List[R]:
        """
        Chunk values in submission order.

        Raises:
            The first exception in submission order, if any chunk raised
        """
        for result in self.results:
            if result.error is not None:
                raise result.error
        return [r.value for r in self.results]  # type: ignore[misc]


class ChunkExecutor:
    """
    Run independent chunks of CPU work with bounded concurrency.

    Results always come back in submission order, so any reduction over
    them is independent of the number of workers.

    Example:
        executor = ChunkExecutor(max_concurrency=4)
        counts = executor.map(count_branch, residues)
    """

    def __init__(self, max_concurrency: int = 1, show_progress: bool = False) -> None:
        """
        Initialize chunk executor.

        Args:
            max_concurrency: Maximum number of chunks running at once
            show_progress: Whether to write progress updates to stderr
        """
        if max_concurrency < 1:
            raise ValueError("max_concurrency must be at least 1")
        self.max_concurrency = max_concurrency
        self.show_progress = show_progress
        self._semaphore: Optional[asyncio.Semaphore] = None

    async def execute_chunks(
        self, func: Callable[[T], R], items: Sequence[T]
    ) -> ChunkResults[R]:
        """
        Apply ``func`` to every item in worker threads.

        Args:
            func: Pure function applied to each item
            items: Chunk descriptors

        Returns:
            ChunkResults in submission order
        """
        if not items:
            return ChunkResults(results=[], total_duration_ms=0.0)

        self._semaphore = asyncio.Semaphore(self.max_concurrency)

        if self.show_progress:
            self._progress(f"Processing {len(items)} chunks...")

        start_time = time.perf_counter()
        tasks = [self._execute_single(func, i, item) for i, item in enumerate(items)]
        results = await asyncio.gather(*tasks)
        chunk_results = ChunkResults(
            results=list(results),
            total_duration_ms=(time.perf_counter() - start_time) * 1000,
        )

        if self.show_progress:
            self._progress(chunk_results.summary())

        return chunk_results

    def map(self, func: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """
        Synchronous front end to ``execute_chunks``.

        With a single worker the chunks run inline, in order.
        """
        if self.max_concurrency == 1:
            values: List[R] = []
            for i, item in enumerate(items):
                values.append(func(item))
                if self.show_progress:
                    self._progress(f"  [{i + 1}/{len(items)}] done")
            return values
        return asyncio.run(self.execute_chunks(func, items)).values()

    async def _execute_single(
        self, func: Callable[[T], R], index: int, item: T
    ) -> ChunkResult[R]:
        """Run one chunk under the semaphore, capturing its exception."""
        async with self._semaphore:  # type: ignore
            start_time = time.perf_counter()
            try:
                value = await asyncio.to_thread(func, item)
                duration_ms = (time.perf_counter() - start_time) * 1000
                if self.show_progress:
                    self._progress(f"  [{index + 1}] ok ({duration_ms:.0f}ms)")
                return ChunkResult(index=index, value=value, duration_ms=duration_ms)
            except Exception as e:
                duration_ms = (time.perf_counter() - start_time) * 1000
                if self.show_progress:
                    self._progress(f"  [{index + 1}] error: {e}")
                return ChunkResult(index=index, error=e, duration_ms=duration_ms)

    @staticmethod
    def _progress(message: str) -> None:
        print(message, file=sys.stderr)
