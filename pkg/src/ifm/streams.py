"""Counter-based uniform streams keyed by ``(seed, stream)``.

The generator is numpy's ``Philox4x64`` (10 rounds) with the 128-bit key
``[seed, stream]``. Position ``i`` of a stream is the ``i``-th 64-bit word the
generator emits from counter zero, mapped to a double in ``[0, 1)`` by keeping
its top 53 bits. Any slice of a stream can be produced without generating
what comes before it, so Monte Carlo work split over any number of workers
reproduces the single-worker result bit for bit.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

UINT64_MAX = 2**64 - 1
_WORDS_PER_BLOCK = 4  # Philox4x64 emits four 64-bit words per counter step
_INV_2_53 = 1.0 / 9007199254740992.0


def check_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed <= UINT64_MAX:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def uniforms(seed: int, stream: int, start: int, stop: int) -> np.ndarray:
    """Positions ``start..stop-1`` of stream ``(seed, stream)`` as doubles."""
    if stop < start or start < 0:
        raise ValueError(f"bad stream slice [{start}, {stop})")
    bitgen = np.random.Philox(key=[check_seed(seed), int(stream)])
    block, offset = divmod(start, _WORDS_PER_BLOCK)
    if block:
        bitgen.advance(block)
    raw = bitgen.random_raw(offset + stop - start)[offset:]
    return (raw >> np.uint64(11)).astype(np.float64) * _INV_2_53


def chunk_bounds(n: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(int(workers), n))
    edges = np.linspace(0, n, workers + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def parallel_map_chunks(fn, n: int, workers: int = 1) -> list:
    """Apply ``fn(start, stop)`` to contiguous chunks of ``range(n)`` in order."""
    bounds = chunk_bounds(n, workers)
    if len(bounds) == 1:
        return [fn(*bounds[0])]
    with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
        return list(pool.map(lambda ab: fn(*ab), bounds))


def worker_count(default: int | None = None) -> int:
    """Worker cap from ``IFM_THREADS``, else ``default`` or the CPU count."""
    env = os.environ.get("IFM_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"IFM_THREADS must be an integer, got {env!r}") from None
        if n < 1:
            raise ValueError(f"IFM_THREADS must be >= 1, got {n}")
        return n
    if default is not None:
        return default
    return os.cpu_count() or 1
