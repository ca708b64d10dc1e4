# Copyright 2026 The hsdiv Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Thread fan-out for independent numerical jobs (grid points, audit pairs).
"""

import logging
from collections.abc import Callable, Sequence
from functools import partial
from typing import TypeVar

import anyio
import anyio.to_thread
import psutil

from hsdiv.core.conf import get_settings


logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def default_jobs() -> int:
    return get_settings().JOBS or psutil.cpu_count(logical=True) or 1


async def _run_parallel_async(
    fn: Callable[[T], R], items: Sequence[T], jobs: int | None = None
) -> list[R]:
    """
    Runs ``fn`` on every item in worker threads, at most ``jobs`` at a time.
    Results come back in item order regardless of completion order; an exception
    cancels the remaining work.
    """
    limiter = anyio.CapacityLimiter(jobs or default_jobs())
    results: list = [None] * len(items)

    async def worker(index: int, item: T) -> None:
        results[index] = await anyio.to_thread.run_sync(partial(fn, item), limiter=limiter)

    async with anyio.create_task_group() as tg:
        for index, item in enumerate(items):
            tg.start_soon(worker, index, item)
    return results


def run_parallel(fn: Callable[[T], R], items: Sequence[T], jobs: int | None = None) -> list[R]:
    items = list(items)
    jobs = jobs or default_jobs()
    if jobs == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug(f'running {len(items)} jobs on {jobs} threads')
    try:
        return anyio.run(_run_parallel_async, fn, items, jobs)
    except ExceptionGroup as eg:
        first = eg
        while isinstance(first, ExceptionGroup):
            first = first.exceptions[0]
        raise first from eg
