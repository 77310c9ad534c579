"""Deterministic chunked Monte Carlo driver.

Sample ``j`` always lives in chunk ``j // CHUNK_SIZE``, and chunk ``c`` draws from
a Philox stream keyed by ``(seed, stream, c)``. Partial sums are reduced with
``math.fsum`` so results are bit-identical for any number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

from .errors import InvalidInputError

CHUNK_SIZE = 1 << 15

Kernel = Callable[[np.random.Generator, int], np.ndarray]


def chunk_rng(seed: int, chunk: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream, chunk))))


def run_chunked(kernel: Kernel, samples: int, seed: int, *, stream: int = 0,
                workers: int = 1) -> np.ndarray:
    """Run ``kernel(rng, size)`` over all chunks and return the summed partial results.

    ``kernel`` must return a 1-D array of per-chunk sums (same length every call).
    """
    if samples < 1:
        raise InvalidInputError(f"samples must be positive, got {samples}")
    n_chunks = -(-samples // CHUNK_SIZE)

    def one(c: int) -> np.ndarray:
        size = min(CHUNK_SIZE, samples - c * CHUNK_SIZE)
        return np.atleast_1d(np.asarray(kernel(chunk_rng(seed, c, stream), size), float))

    if workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, range(n_chunks)))
    else:
        parts = [one(c) for c in range(n_chunks)]
    stacked = np.stack(parts)
    return np.array([math.fsum(col) for col in stacked.T])


def mean_and_stderr(total: float, total_sq: float, samples: int) -> tuple[float, float]:
    """Sample mean and standard error from running sums."""
    mean = float(total) / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    if samples > 1:
        var *= samples / (samples - 1)
    return float(mean), math.sqrt(var / samples)
