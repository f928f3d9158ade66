"""Transversal GRAND: likelihood-ordered error guessing across packets.

One bit position of the corrupted packets is an L-bit column whose bits
are the current states of L independent two-state Markov chains.  Given
the previous column's estimate, candidate columns split into classes by
how many chains flip 0->1 (l0 of the L0 zeros) and 1->0 (l1 of the L1
ones); every vector in a class has probability

    p01^l0 (1-p01)^(L0-l0) p10^l1 (1-p10)^(L1-l1).

Candidates are queried class by class in descending probability, so the
first one satisfying the syndrome constraint is a maximum-likelihood
repair.  Columns are solved left to right, each estimate seeding the
next column's prior; the prior for the first column is all-zero because
the chains start in the good state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from ._patterns import RankedSearch, combination_masks, spread_mask, subset_syndromes
from .channel import ChannelParams
from .gf2 import BitMatrix
from .syndrome_decoder import (
    DEFAULT_QUERY_CAP,
    _FAST_MAX_CHECKS,
    _FAST_MAX_UNKNOWNS,
    RepairResult,
    SyndromeSystem,
    _bits_to_mask,
    _mask_to_bits,
)

# Two class probabilities tie when their logs agree to this tolerance;
# ties fall back to (l0+l1, l0) ordering so runs are reproducible.
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class TransitionClass:
    """One (l0, l1) flip class: per-vector probability and vector count."""

    l0: int
    l1: int
    prob: float
    count: int


@dataclass(frozen=True)
class ColumnPrior:
    """Previous column's estimate, split into zero and one positions."""

    prev: tuple[int, ...]
    zero_positions: tuple[int, ...]
    one_positions: tuple[int, ...]

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "ColumnPrior":
        prev = tuple(b & 1 for b in bits)
        return cls(
            prev=prev,
            zero_positions=tuple(i for i, b in enumerate(prev) if b == 0),
            one_positions=tuple(i for i, b in enumerate(prev) if b == 1),
        )

    @classmethod
    def all_zero(cls, length: int) -> "ColumnPrior":
        return cls.from_bits((0,) * length)

    @property
    def length(self) -> int:
        return len(self.prev)


def class_probability(params: ChannelParams, big_l0: int, big_l1: int, l0: int, l1: int) -> float:
    """Probability of any single vector in class (l0, l1)."""
    if not (0 <= l0 <= big_l0 and 0 <= l1 <= big_l1):
        raise ValueError("flip counts exceed available positions")
    p01, p10 = params.p01, params.p10
    return (
        p01**l0 * (1.0 - p01) ** (big_l0 - l0) * p10**l1 * (1.0 - p10) ** (big_l1 - l1)
    )


def sorted_classes(params: ChannelParams, big_l0: int, big_l1: int) -> list[TransitionClass]:
    """All (L0+1)(L1+1) classes in descending probability.

    Probabilities are compared in the log domain; classes within
    TIE_TOLERANCE of each other order by smaller l0+l1, then smaller l0.
    """
    return list(_sorted_classes_cached(params.p01, params.p10, big_l0, big_l1))


@lru_cache(maxsize=4096)
def _sorted_classes_cached(
    p01: float, p10: float, big_l0: int, big_l1: int
) -> tuple[TransitionClass, ...]:
    lp01, l1mp01 = _log(p01), _log(1.0 - p01)
    lp10, l1mp10 = _log(p10), _log(1.0 - p10)
    entries = []
    for l0 in range(big_l0 + 1):
        for l1 in range(big_l1 + 1):
            logp = (
                _xlog(l0, lp01)
                + _xlog(big_l0 - l0, l1mp01)
                + _xlog(l1, lp10)
                + _xlog(big_l1 - l1, l1mp10)
            )
            entries.append((logp, l0, l1))
    entries.sort(key=lambda e: -e[0])
    # Cluster near-equal log-probabilities, then apply the tie rule inside
    # each cluster.
    groups: list[list[tuple[float, int, int]]] = []
    for entry in entries:
        if groups and _log_tie(groups[-1][0][0], entry[0]):
            groups[-1].append(entry)
        else:
            groups.append([entry])
    params = ChannelParams(p01=p01, p10=p10)
    out = []
    for group in groups:
        group.sort(key=lambda e: (e[1] + e[2], e[1]))
        for _, l0, l1 in group:
            out.append(
                TransitionClass(
                    l0=l0,
                    l1=l1,
                    prob=class_probability(params, big_l0, big_l1, l0, l1),
                    count=math.comb(big_l0, l0) * math.comb(big_l1, l1),
                )
            )
    return tuple(out)


def _log(p: float) -> float:
    return math.log(p) if p > 0.0 else -math.inf


def _xlog(k: int, logp: float) -> float:
    # 0 * -inf must be 0 (empty product), not nan.
    return 0.0 if k == 0 else k * logp


def _log_tie(a: float, b: float) -> bool:
    if a == b:
        return True
    if math.isinf(a) or math.isinf(b):
        return False
    return abs(a - b) <= TIE_TOLERANCE * max(1.0, abs(a), abs(b))


def enumerate_candidates(
    prior: ColumnPrior, params: ChannelParams
) -> Iterator[tuple[int, ...]]:
    """Yield all 2^L candidate columns in descending likelihood.

    Within a class, the flipped zero positions run lexicographically as
    the outer loop and the flipped one positions as the inner loop.
    The emitted vectors use the original coordinate positions.
    """
    zp, op = prior.zero_positions, prior.one_positions
    for cls in sorted_classes(params, len(zp), len(op)):
        for flips0 in combinations(zp, cls.l0):
            for flips1 in combinations(op, cls.l1):
                bits = list(prior.prev)
                for pos in flips0:
                    bits[pos] = 1
                for pos in flips1:
                    bits[pos] = 0
                yield tuple(bits)


def tg_solve_column(
    ht: BitMatrix,
    s: Sequence[int],
    prior: ColumnPrior,
    params: ChannelParams,
    query_cap: int = DEFAULT_QUERY_CAP,
) -> tuple[int, ...] | None:
    """First candidate (in likelihood order) with ht·wᵀ = s, or None at the cap."""
    if len(s) != ht.rows:
        raise ValueError(f"syndrome length {len(s)} does not match {ht.rows} checks")
    if prior.length != ht.cols:
        raise ValueError(f"prior length {prior.length} does not match {ht.cols} unknowns")
    target = _bits_to_mask(s)
    mask, _ = _tg_solve_mask_scalar(ht.col_ints(), prior, params, target, query_cap)
    if mask is None:
        return None
    return _mask_to_bits(mask, ht.cols)


def tg_repair(
    system: SyndromeSystem,
    params: ChannelParams,
    query_cap: int = DEFAULT_QUERY_CAP,
) -> RepairResult:
    """Estimate all B error columns, chaining each estimate into the next prior.

    A capped-out column is left all-zero and the next column restarts
    from the all-zero prior.
    """
    l = system.num_unknowns
    cols = system.ht.col_ints()
    targets = system.s.col_ints()
    fast = system.ht.rows <= _FAST_MAX_CHECKS and l <= _FAST_MAX_UNKNOWNS
    searches: dict[int, RankedSearch] = {}
    scalar_memo: dict[tuple[int, int], tuple[int | None, int]] = {}
    out_cols: list[int] = []
    queries: list[int] = []
    unresolved: list[int] = []
    prior_mask = 0
    for b, target in enumerate(targets):
        if fast:
            search = searches.get(prior_mask)
            if search is None:
                search = _make_prior_search(cols, l, prior_mask, params, query_cap)
                searches[prior_mask] = search
            mask, q = search.find(target)
        else:
            key = (prior_mask, target)
            if key not in scalar_memo:
                prior = ColumnPrior.from_bits(_mask_to_bits(prior_mask, l))
                scalar_memo[key] = _tg_solve_mask_scalar(cols, prior, params, target, query_cap)
            mask, q = scalar_memo[key]
        queries.append(q)
        if mask is None:
            unresolved.append(b)
            out_cols.append(0)
            prior_mask = 0
        else:
            out_cols.append(mask)
            prior_mask = mask
    e_hat = BitMatrix(system.num_columns, l, out_cols).transpose()
    return RepairResult(
        e_hat=e_hat, unresolved=tuple(unresolved), queries_per_column=tuple(queries)
    )


def _make_prior_search(
    cols, l: int, prior_mask: int, params: ChannelParams, query_cap: int
) -> RankedSearch:
    prior = ColumnPrior.from_bits(_mask_to_bits(prior_mask, l))
    return RankedSearch(
        _class_blocks(cols, prior, params), 1 << l, query_cap
    )


def _class_blocks(cols, prior: ColumnPrior, params: ChannelParams):
    """Vectorized per-class candidate syndromes in enumeration order.

    Flip masks factor into a zero-side and a one-side combination; the
    block's syndromes are base ^ side0 ^ side1 where base is the prior's
    own syndrome, so candidate k's syndrome never needs the full vector.
    """
    zp, op = prior.zero_positions, prior.one_positions
    zcols = [cols[p] for p in zp]
    ocols = [cols[p] for p in op]
    base = 0
    for c in ocols:
        base ^= c
    prior_mask = _bits_to_mask(prior.prev)
    side0: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    side1: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for cls in sorted_classes(params, len(zp), len(op)):
        if cls.l0 not in side0:
            m = combination_masks(len(zp), cls.l0)
            side0[cls.l0] = (m, subset_syndromes(m, zcols))
        if cls.l1 not in side1:
            m = combination_masks(len(op), cls.l1)
            side1[cls.l1] = (m, subset_syndromes(m, ocols))
        m0, s0 = side0[cls.l0]
        m1, s1 = side1[cls.l1]
        n1 = len(m1)
        syn = np.repeat(s0, n1) ^ np.tile(s1, len(m0)) ^ np.uint64(base)

        def decode(i: int, m0=m0, m1=m1, n1=n1) -> int:
            i0, i1 = divmod(i, n1)
            flip = spread_mask(int(m0[i0]), zp) | spread_mask(int(m1[i1]), op)
            return prior_mask ^ flip

        yield syn, decode


def _tg_solve_mask_scalar(
    cols, prior: ColumnPrior, params: ChannelParams, target: int, query_cap: int
) -> tuple[int | None, int]:
    """Reference enumeration; handles syndromes wider than 64 bits."""
    queries = 0
    for bits in enumerate_candidates(prior, params):
        if queries == query_cap:
            return None, queries
        queries += 1
        acc = 0
        for j, bit in enumerate(bits):
            if bit:
                acc ^= cols[j]
        if acc == target:
            return _bits_to_mask(bits), queries
    return None, queries
