from __future__ import annotations

import contextvars
from concurrent.futures import Future, ThreadPoolExecutor
from typing import TYPE_CHECKING, TypeVar

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

T = TypeVar("T")
U = TypeVar("U")


class ContextCopyingExecutor(ThreadPoolExecutor):
    """ThreadPoolExecutor that copies context variables from the submitting thread to the worker thread.

    Spans started by workers therefore nest under the caller's current span.
    """

    def submit(
        self, fn: Callable[..., object], *args: object, **kwargs: object
    ) -> Future:
        ctx = contextvars.copy_context()
        return super().submit(lambda: ctx.run(fn, *args, **kwargs))


def ordered_map(fn: Callable[[T], U], items: Iterable[T], workers: int) -> list[U]:
    """Applies `fn` to every item, concurrently when `workers > 1`.

    Results are returned in input order regardless of completion order.

    Raises:
        ValueError: If workers is less than 1.
    """
    if workers < 1:
        msg = f"workers must be at least 1, got {workers}"
        raise ValueError(msg)
    if workers == 1:
        return [fn(item) for item in items]
    with ContextCopyingExecutor(max_workers=workers) as executor:
        futures = [executor.submit(fn, item) for item in items]
        return [future.result() for future in futures]
