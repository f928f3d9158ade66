"""Minimum-weight syndrome repair of erroneous packets.

The receiver knows S = Hᵀ·Y, which equals (H restricted to corrupted
rows)ᵀ times the unknown error rows.  Each bit position b gives one
linear system; the repair picks, per column, the lightest error vector
consistent with that syndrome.  Candidates are tried in weight order
(0, 1, 2, ...), lexicographic by support within a weight, so runs are
reproducible; a query cap bounds the search per column.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from . import gf2
from ._patterns import RankedSearch, combination_masks, subset_syndromes
from .gf2 import BitMatrix
from .rlc import ParityCheck

DEFAULT_QUERY_CAP = 1 << 20

# Vectorized search needs syndromes in a machine word and combination
# masks in uint64; anything larger falls back to the scalar path.
_FAST_MAX_CHECKS = 64
_FAST_MAX_UNKNOWNS = 62


@dataclass(frozen=True)
class SyndromeSystem:
    """Per-batch syndrome system: ht = (H_corrupted)ᵀ of shape (N-K)×L, s = (N-K)×B."""

    ht: BitMatrix
    s: BitMatrix

    def __post_init__(self):
        if self.s.rows != self.ht.rows:
            raise ValueError("syndrome row count must match parity-check row count")

    @property
    def num_unknowns(self) -> int:
        return self.ht.cols

    @property
    def num_columns(self) -> int:
        return self.s.cols


@dataclass(frozen=True)
class RepairResult:
    """Estimated error rows for the corrupted packets, with per-column bookkeeping."""

    e_hat: BitMatrix
    unresolved: tuple[int, ...]
    queries_per_column: tuple[int, ...]

    @property
    def queries_total(self) -> int:
        return sum(self.queries_per_column)


def compute_syndrome(h: ParityCheck, y: BitMatrix) -> BitMatrix:
    """S = Hᵀ·Y; independent of the transmitted data because Hᵀ·G = 0."""
    return gf2.matmul(h.matrix.transpose(), y)


def sd_solve_column(
    ht: BitMatrix, s: Sequence[int], query_cap: int = DEFAULT_QUERY_CAP
) -> tuple[int, ...] | None:
    """First minimal-weight w with ht·wᵀ = s, or None once the cap is hit.

    Search order: weight 0, 1, 2, ...; within a weight, support sets in
    lexicographic position order.
    """
    if len(s) != ht.rows:
        raise ValueError(f"syndrome length {len(s)} does not match {ht.rows} checks")
    target = _bits_to_mask(s)
    mask, _ = _solve_mask_scalar(ht.col_ints(), ht.cols, target, query_cap)
    if mask is None:
        return None
    return _mask_to_bits(mask, ht.cols)


def sd_repair(system: SyndromeSystem, query_cap: int = DEFAULT_QUERY_CAP) -> RepairResult:
    """Solve every column of the system independently at minimum weight.

    Columns whose search exceeds the cap are left all-zero and reported
    in `unresolved`.
    """
    l = system.num_unknowns
    cols = system.ht.col_ints()
    targets = system.s.col_ints()
    out_cols: list[int] = []
    queries: list[int] = []
    unresolved: list[int] = []
    finder = _make_finder(cols, l, system.ht.rows, query_cap)
    for b, target in enumerate(targets):
        mask, q = finder(target)
        queries.append(q)
        if mask is None:
            unresolved.append(b)
            out_cols.append(0)
        else:
            out_cols.append(mask)
    e_hat = BitMatrix(system.num_columns, l, out_cols).transpose()
    return RepairResult(
        e_hat=e_hat, unresolved=tuple(unresolved), queries_per_column=tuple(queries)
    )


def _make_finder(cols, l, checks, query_cap):
    """Shared-stream finder; all columns scan one candidate order, so the
    first hit per target equals the per-column search result."""
    if checks <= _FAST_MAX_CHECKS and l <= _FAST_MAX_UNKNOWNS:
        search = RankedSearch(_weight_blocks(cols, l), 1 << l, query_cap)
        return search.find
    memo: dict[int, tuple[int | None, int]] = {}

    def scalar_find(target: int) -> tuple[int | None, int]:
        if target not in memo:
            memo[target] = _solve_mask_scalar(cols, l, target, query_cap)
        return memo[target]

    return scalar_find


def _weight_blocks(cols, l: int) -> Iterator[tuple[np.ndarray, object]]:
    col_list = list(cols)
    for w in range(l + 1):
        masks = combination_masks(l, w)
        syn = subset_syndromes(masks, col_list)
        yield syn, lambda i, m=masks: int(m[i])


def _solve_mask_scalar(cols, l: int, target: int, query_cap: int) -> tuple[int | None, int]:
    """Reference enumeration with arbitrary-size syndrome ints."""
    queries = 0
    for w in range(l + 1):
        for combo in combinations(range(l), w):
            if queries == query_cap:
                return None, queries
            queries += 1
            acc = 0
            for j in combo:
                acc ^= cols[j]
            if acc == target:
                mask = 0
                for j in combo:
                    mask |= 1 << j
                return mask, queries
    return None, queries


def _bits_to_mask(bits: Sequence[int]) -> int:
    mask = 0
    for i, bit in enumerate(bits):
        mask |= (bit & 1) << i
    return mask


def _mask_to_bits(mask: int, length: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(length))
