"""Fixed-magnetization basis blocks as bitmasks.

A state of N spins is an N-bit mask: bit (N-1-k) holds the spin at site k,
so site 0 is the most significant bit and the printed binary string reads
left to right as sites 0..N-1. Spin up (m = +1/2) is 1, spin down is 0.
A block collects every mask with a fixed number of up spins, ordered by
strictly decreasing integer value (all-up first, all-down last).
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

MAX_SITES = 24


@dataclass
class BasisBlock:
    """Ordered basis of all n_sites-bit masks with exactly n_up bits set."""

    n_sites: int
    n_up: int
    states: np.ndarray = field(repr=False)
    rank_index: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.states)


def enumerate_block(n_sites: int, n_up: int) -> BasisBlock:
    """Build the block of C(n_sites, n_up) masks in decreasing order.

    Combinations of up-site positions in lexicographic order map exactly to
    decreasing mask values, because earlier sites carry more significant bits.
    """
    if not 0 <= n_sites <= MAX_SITES:
        raise ValueError(f"n_sites must be in 0..{MAX_SITES}, got {n_sites}")
    if not 0 <= n_up <= n_sites:
        raise ValueError(f"n_up must be in 0..{n_sites}, got {n_up}")
    weights = [1 << (n_sites - 1 - s) for s in range(n_sites)]
    states = np.fromiter(
        (sum(weights[s] for s in combo) for combo in combinations(range(n_sites), n_up)),
        dtype=np.int64,
        count=comb(n_sites, n_up),
    )
    rank_index = {int(m): k for k, m in enumerate(states)}
    return BasisBlock(n_sites=n_sites, n_up=n_up, states=states, rank_index=rank_index)


def rank(state: int, block: BasisBlock) -> int:
    """Position of a mask in the block ordering."""
    if int(state).bit_count() != block.n_up:
        raise ValueError(
            f"state {state:#b} has {int(state).bit_count()} up spins, block holds {block.n_up}"
        )
    try:
        return block.rank_index[int(state)]
    except KeyError:
        raise ValueError(f"state {state:#b} does not fit a {block.n_sites}-site block") from None


def site_bit(n_sites: int, site: int) -> int:
    """Mask selecting the bit that stores the given site's spin."""
    return 1 << (n_sites - 1 - site)


def flip_pair(state: int, i: int, j: int, n_sites: int):
    """Exchange the spins at sites i and j, or None when they are parallel.

    Parallel spins give a vanishing raising/lowering amplitude; antiparallel
    spins swap, which toggles both bits and preserves the popcount.
    """
    if i == j or i >= n_sites or j >= n_sites:
        raise ValueError(f"need two distinct sites below {n_sites}, got ({i}, {j})")
    bi, bj = site_bit(n_sites, i), site_bit(n_sites, j)
    if bool(state & bi) == bool(state & bj):
        return None
    return state ^ (bi | bj)


def expand_to_full(block_vector: np.ndarray, block: BasisBlock) -> np.ndarray:
    """Scatter a block vector into the full 2^n_sites product-state vector.

    The full-space position of a mask is its integer value, so this is a
    pure scatter: norm and inner products are preserved.
    """
    v = np.asarray(block_vector, dtype=np.float64)
    if v.shape != (block.dim,):
        raise ValueError(f"vector has shape {v.shape}, block dimension is {block.dim}")
    full = np.zeros(1 << block.n_sites)
    full[block.states] = v
    return full
