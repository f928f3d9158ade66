"""Bitmask pattern enumeration shared by the two guessing decoders.

Candidate error columns are walked in blocks (one Hamming-weight layer,
or one likelihood class) whose syndromes are computed with vectorized
uint64 XOR.  Block order and within-block order are part of the decoder
contracts, so everything here is deterministic.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator

import numpy as np


@lru_cache(maxsize=512)
def combination_masks(n: int, k: int) -> np.ndarray:
    """All C(n, k) bitmasks over positions 0..n-1, lexicographic by support."""
    if n > 62:
        raise ValueError("combination masks limited to 62 positions")
    out = np.empty(0 if k > n else _comb(n, k), dtype=np.uint64)
    for i, combo in enumerate(combinations(range(n), k)):
        m = 0
        for pos in combo:
            m |= 1 << pos
        out[i] = m
    return out


def _comb(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def subset_syndromes(masks: np.ndarray, cols: list[int]) -> np.ndarray:
    """XOR of cols[i] over the set bits i of each mask (cols fit in 64 bits)."""
    out = np.zeros(len(masks), dtype=np.uint64)
    for i, col in enumerate(cols):
        if col:
            hit = (masks >> np.uint64(i)).astype(np.uint64) & np.uint64(1)
            out ^= hit * np.uint64(col)
    return out


def spread_mask(mask: int, positions: tuple[int, ...]) -> int:
    """Map abstract mask bit i to concrete position positions[i]."""
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << positions[i]
        mask >>= 1
        i += 1
    return out


class RankedSearch:
    """Lazy first-hit lookup over an ordered candidate stream.

    The stream arrives in blocks of (syndrome array, decoder) where
    decoder(i) yields the candidate mask for index i inside its block.
    Results are memoized per target so repeated queries are O(1); the
    stream is never materialized beyond what queries have required.
    """

    def __init__(
        self,
        blocks: Iterator[tuple[np.ndarray, Callable[[int], int]]],
        total: int,
        query_cap: int,
    ):
        self._blocks = blocks
        self._limit = min(total, query_cap)
        self._chunks: list[tuple[int, np.ndarray, Callable[[int], int]]] = []
        self._built = 0
        self._memo: dict[int, tuple[int | None, int]] = {}

    def find(self, target: int) -> tuple[int | None, int]:
        """Return (candidate mask, queries used) or (None, queries) at exhaustion.

        Queries count candidates tested up to and including the hit; a miss
        costs the full stream prefix allowed by the cap.
        """
        if target in self._memo:
            return self._memo[target]
        t = np.uint64(target)
        hit = None
        for offset, syn, decode in self._chunks:
            idx = np.flatnonzero(syn == t)
            if idx.size:
                hit = (decode(int(idx[0])), offset + int(idx[0]) + 1)
                break
        while hit is None and self._built < self._limit:
            try:
                syn, decode = next(self._blocks)
            except StopIteration:
                break
            room = self._limit - self._built
            if len(syn) > room:
                syn = syn[:room]
            self._chunks.append((self._built, syn, decode))
            idx = np.flatnonzero(syn == t)
            if idx.size:
                hit = (decode(int(idx[0])), self._built + int(idx[0]) + 1)
            self._built += len(syn)
        if hit is None:
            hit = (None, self._built)
        self._memo[target] = hit
        return hit
