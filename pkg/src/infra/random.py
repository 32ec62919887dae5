"""Deterministic random substreams and the replication block executor.

Replications are split into fixed-size blocks. Block ``k`` of stream ``j``
draws from a Philox generator keyed by ``(seed, j, k)``, so the numbers a
replication sees never depend on how many workers run the blocks.
"""

from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np
import structlog

logger = structlog.get_logger(__name__)

T = TypeVar("T")

# Stream identifiers
STREAM_PRIMARY = 0
STREAM_SECONDARY = 1


def block_rng(seed: int, stream: int, block: int) -> np.random.Generator:
    """Counter-based generator for one (stream, block) substream."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(stream, block))
    return np.random.Generator(np.random.Philox(sequence))


def block_sizes(reps: int, block_size: int) -> list[int]:
    """Split ``reps`` replications into blocks of at most ``block_size``."""
    if reps <= 0:
        return []
    full, rest = divmod(reps, block_size)
    sizes = [block_size] * full
    if rest:
        sizes.append(rest)
    return sizes


def run_blocks(
    func: Callable[[int, int], T],
    reps: int,
    block_size: int,
    workers: int = 1,
) -> list[T]:
    """Run ``func(block_index, n_in_block)`` for every block, in block order."""
    sizes = block_sizes(reps, block_size)
    if workers <= 1 or len(sizes) <= 1:
        return [func(index, n) for index, n in enumerate(sizes)]

    logger.debug("running replication blocks", blocks=len(sizes), workers=workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order
        return list(pool.map(func, range(len(sizes)), sizes))
