"""Brute-force oracles that the implementation is checked against.

Everything here enumerates exhaustively or recomputes from first
principles, independent of the code paths under test.
"""

from __future__ import annotations

from functools import cmp_to_key

from rlcgrand.gf2 import BitMatrix
from rlcgrand.rng import SplitMix64, derive_seed


def rank_by_row_space(m: BitMatrix) -> int:
    """Rank = log2 of the row-space size, built by closing {0} under XOR."""
    span = {0}
    for r in m.row_ints:
        span |= {v ^ r for v in span}
    return len(span).bit_length() - 1


def syndrome_of_mask(ht: BitMatrix, mask: int) -> int:
    cols = ht.col_ints()
    acc = 0
    for j in range(ht.cols):
        if (mask >> j) & 1:
            acc ^= cols[j]
    return acc


def min_weight_solutions(ht: BitMatrix, target: int) -> tuple[int | None, list[int]]:
    """(minimal weight, all minimal-weight solution masks) over all 2^L vectors."""
    best_w: int | None = None
    best: list[int] = []
    for mask in range(1 << ht.cols):
        if syndrome_of_mask(ht, mask) != target:
            continue
        w = bin(mask).count("1")
        if best_w is None or w < best_w:
            best_w, best = w, [mask]
        elif w == best_w:
            best.append(mask)
    return best_w, best


def vector_probability(bits, prior_bits, p01: float, p10: float) -> float:
    """Transition probability of prior -> bits under L independent chains."""
    prob = 1.0
    for b, prev in zip(bits, prior_bits):
        if prev == 0:
            prob *= p01 if b else 1.0 - p01
        else:
            prob *= p10 if not b else 1.0 - p10
    return prob


def _flip_signature(bits, prior_bits):
    """(l0+l1, l0, zero-side flips, one-side flips) for the tie order."""
    flips0 = tuple(i for i, (b, p) in enumerate(zip(bits, prior_bits)) if p == 0 and b == 1)
    flips1 = tuple(i for i, (b, p) in enumerate(zip(bits, prior_bits)) if p == 1 and b == 0)
    return (len(flips0) + len(flips1), len(flips0), flips0, flips1)


def map_solution(ht: BitMatrix, target: int, prior_bits, p01: float, p10: float):
    """Most likely satisfying vector, ties broken by the documented order."""
    sat = []
    for mask in range(1 << ht.cols):
        if syndrome_of_mask(ht, mask) == target:
            bits = tuple((mask >> j) & 1 for j in range(ht.cols))
            sat.append((vector_probability(bits, prior_bits, p01, p10), _flip_signature(bits, prior_bits), bits))
    if not sat:
        return None

    def cmp(a, b):
        pa, pb = a[0], b[0]
        if abs(pa - pb) > 1e-12 * max(pa, pb, 1e-300):
            return -1 if pa > pb else 1
        return -1 if a[1] < b[1] else (1 if a[1] > b[1] else 0)

    sat.sort(key=cmp_to_key(cmp))
    return sat[0][2]


def markov_error_rows(p01: float, p10: float, n: int, b: int, seed: int) -> list[list[int]]:
    """Scalar re-implementation of the channel's error generation contract."""
    rows = []
    for i in range(n):
        stream = SplitMix64(derive_seed(seed, i))
        state = 0
        bits = []
        for _ in range(b):
            u = stream.next_float()
            state = int(u < p01) if state == 0 else int(u >= p10)
            bits.append(state)
        rows.append(bits)
    return rows
