# masks.py

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

from grid_module.grid import Coord, Grid, fundamental_coords, validate


logger = logging.getLogger(__name__)

DEFAULT_EXHAUSTIVE_LIMIT = 3


class LimitExceededError(ValueError):
    pass


@lru_cache(maxsize=None)
def region_coords(n: int) -> Tuple[Coord, ...]:
    return tuple(fundamental_coords(n))


def region_size(n: int) -> int:
    return 2 * n * n + 2 * n + 1


@dataclass(frozen=True, order=True)
class VoidMask:
    """Bit k set means the k-th fundamental-region coordinate (mask order) is a void."""

    n: int
    bits: int

    def voids(self) -> List[Coord]:
        return [c for k, c in enumerate(region_coords(self.n)) if self.bits >> k & 1]

    def to_grid(self) -> Grid:
        return Grid.from_voids(self.n, self.voids(), symmetric=True)

    @classmethod
    def from_grid(cls, g: Grid) -> "VoidMask":
        bits = 0
        for k, c in enumerate(region_coords(g.n)):
            if not g.is_cell(c):
                bits |= 1 << k
        return cls(n=g.n, bits=bits)


def check_limit(n: int, limit: Optional[int]) -> None:
    limit = DEFAULT_EXHAUSTIVE_LIMIT if limit is None else limit
    if n > limit:
        raise LimitExceededError(
            f"Exhaustive enumeration at n={n} exceeds the limit n={limit} (2^{region_size(n)} masks)"
        )


def enumerate_masks(n: int, limit: Optional[int] = None) -> Iterator[VoidMask]:
    """All 2^(2n^2+2n+1) masks in ascending bit order."""
    check_limit(n, limit)
    return (VoidMask(n, bits) for bits in range(1 << region_size(n)))


def mask_chunks(n: int, chunk_size: int) -> Iterator[Tuple[int, int]]:
    total = 1 << region_size(n)
    for start in range(0, total, chunk_size):
        yield start, min(start + chunk_size, total)


def random_mask(n: int, rng: random.Random, density: float) -> VoidMask:
    bits = 0
    for k in range(region_size(n)):
        if rng.random() < density:
            bits |= 1 << k
    return VoidMask(n, bits)


def sample_masks(n: int, count: int, seed: int, density: float = 0.5) -> List[VoidMask]:
    """`count` masks, each region cell voided independently with probability `density`."""
    rng = random.Random(seed)
    return [random_mask(n, rng, density) for _ in range(count)]


def sample_valid_grids(
    n: int,
    count: int,
    seed: int,
    density: float,
    max_attempts_factor: int = 400,
) -> Tuple[List[VoidMask], int]:
    """
    Draw masks until `count` of them expand to valid grids, or the attempt
    budget runs out. Returns the accepted masks and the number of draws.
    """
    rng = random.Random(seed)
    budget = max_attempts_factor * max(count, 1)
    accepted: List[VoidMask] = []
    attempts = 0
    while len(accepted) < count and attempts < budget:
        attempts += 1
        mask = random_mask(n, rng, density)
        if validate(mask.to_grid()).valid:
            accepted.append(mask)

    if len(accepted) < count:
        logger.warning(
            "Sampled only %d of %d valid n=%d grids in %d attempts (density %.3f)",
            len(accepted),
            count,
            n,
            attempts,
            density,
        )
    else:
        logger.info("Sampled %d valid n=%d grids in %d attempts", count, n, attempts)
    return accepted, attempts
