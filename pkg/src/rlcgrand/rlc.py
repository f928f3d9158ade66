"""Systematic random linear packet coding over GF(2).

K source packets of B bits form the rows of U; the transmitter sends
N >= K coded packets X = G·U where G = [I_K; P] and P is a uniformly
random (N-K)×K binary matrix.  The matching parity-check matrix
H = [P | I_{N-K}]ᵀ satisfies Hᵀ·G = 0, which is what lets a receiver
compute syndromes of corrupted packets without knowing U.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .gf2 import BitMatrix
from .rng import SplitMix64


@dataclass(frozen=True)
class Generator:
    """Systematic generator [I_K; P]; P is drawn from SplitMix64(seed)."""

    k: int
    n: int
    matrix: BitMatrix
    seed: int

    def __post_init__(self):
        if self.matrix.rows != self.n or self.matrix.cols != self.k:
            raise ValueError("generator matrix shape does not match (n, k)")

    @property
    def p_block(self) -> BitMatrix:
        return self.matrix.take_rows(range(self.k, self.n))


@dataclass(frozen=True)
class ParityCheck:
    """N×(N-K) matrix H with Hᵀ·G = 0 for the generator it came from."""

    matrix: BitMatrix


def make_generator(k: int, n: int, seed: int) -> Generator:
    """Build the systematic generator for (k, n) from a 64-bit seed.

    P's bits are the top bits of consecutive SplitMix64(seed) outputs,
    filled row-major.  The stream is part of the package contract: the
    same (k, n, seed) must produce the same generator in every version.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < k:
        raise ValueError("n must be at least k")
    stream = SplitMix64(seed)
    rows = [1 << i for i in range(k)]
    for _ in range(n - k):
        v = 0
        for j in range(k):
            v |= stream.next_bit() << j
        rows.append(v)
    return Generator(k=k, n=n, matrix=BitMatrix(n, k, rows), seed=seed)


def encode(gen: Generator, u: BitMatrix) -> BitMatrix:
    """X = G·U; the first K rows of X are U itself (systematic prefix)."""
    if u.rows != gen.k:
        raise ValueError(f"U has {u.rows} rows, expected {gen.k}")
    return gf2.matmul(gen.matrix, u)


def parity_check(gen: Generator) -> ParityCheck:
    """H = [P | I_{N-K}]ᵀ, shape N×(N-K); degenerates to N×0 when N == K."""
    # Row i < K of H is column i of P; the bottom N-K rows are the identity.
    top = gen.p_block.transpose()
    bottom = BitMatrix.identity(gen.n - gen.k)
    return ParityCheck(matrix=top.vstack(bottom))


def rlc_decode(g_rows: BitMatrix, y_rows: BitMatrix) -> BitMatrix | None:
    """Recover U from any row subset of (G, X) with rank K; else None.

    Raises gf2.InconsistentSystemError when the rows do not agree on a
    single U, which means a corrupted row slipped in as clean.
    """
    if g_rows.rows != y_rows.rows:
        raise ValueError("G rows and Y rows must pair up")
    if g_rows.rows < g_rows.cols:
        return None
    return gf2.solve_unique(g_rows, y_rows)
