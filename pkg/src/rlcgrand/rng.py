"""Deterministic 64-bit pseudo-random streams (splitmix64).

All randomness in the package flows through the streams defined here, so
simulation results are reproducible bit-for-bit across runs, platforms and
worker counts.  The contract is frozen because golden fixtures depend on it:

* ``SplitMix64(seed)`` produces output k (zero-based) as
  ``mix64((seed + (k + 1) * GAMMA) mod 2**64)``.
* Random bits are the top bit of each output (``z >> 63``), consumed in
  row-major order when filling matrices.
* Uniform floats in [0, 1) are ``(z >> 11) * 2**-53``.
* ``derive_seed`` folds integer labels into a seed one splitmix64
  finalizer step per label.
"""

from __future__ import annotations

import numpy as np

from .gf2 import BitMatrix

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_INV53 = 2.0 ** -53


def mix64(z: int) -> int:
    """splitmix64 finalizer (Steele, Lea, Flood 2014)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *labels: int) -> int:
    """Derive a child seed from (seed, labels); order-sensitive and stable.

    Each label is finalized on its own before being folded in, so child
    seeds of nearby (seed, label) pairs share no low-bit structure: the
    raw XOR of a counter into the state would merely permute the derived
    streams between two adjacent seeds.
    """
    x = seed & MASK64
    for p in labels:
        x = mix64((x + GAMMA) ^ mix64((p + GAMMA) & MASK64))
    return x


class SplitMix64:
    """Scalar splitmix64 stream; cheap, seedable, and trivially splittable."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_uint64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def next_bit(self) -> int:
        return self.next_uint64() >> 63

    def next_float(self) -> float:
        return (self.next_uint64() >> 11) * _INV53


def _mix64_vec(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def uint64_block(seed: int, n: int) -> np.ndarray:
    """First n outputs of SplitMix64(seed), vectorized via the closed form
    state_k = seed + (k+1)*GAMMA."""
    ks = np.arange(1, n + 1, dtype=np.uint64)
    state = np.uint64(seed & MASK64) + ks * np.uint64(GAMMA)
    return _mix64_vec(state)


def uniform_block(seed: int, n: int) -> np.ndarray:
    """First n uniform floats in [0, 1) of the stream."""
    return (uint64_block(seed, n) >> np.uint64(11)).astype(np.float64) * _INV53


def bit_block(seed: int, n: int) -> np.ndarray:
    """First n random bits (top bit of each output), as uint8."""
    return (uint64_block(seed, n) >> np.uint64(63)).astype(np.uint8)


def random_bit_matrix(seed: int, rows: int, cols: int) -> BitMatrix:
    """Uniform random BitMatrix; bits drawn row-major from the seed's stream."""
    if rows == 0 or cols == 0:
        return BitMatrix.zeros(rows, cols)
    bits = bit_block(seed, rows * cols).reshape(rows, cols)
    return bit_matrix_from_array(bits)


def bit_matrix_from_array(bits: np.ndarray) -> BitMatrix:
    """Pack a 2-D 0/1 uint8 array into a BitMatrix (bit j = column j)."""
    rows, cols = bits.shape
    packed = np.packbits(bits, axis=1, bitorder="little")
    ints = [int.from_bytes(packed[i].tobytes(), "little") for i in range(rows)]
    return BitMatrix(rows, cols, ints)
