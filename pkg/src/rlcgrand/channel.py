"""Two-state Markov (Gilbert) burst-error channel.

Each transmitted packet sees an independent two-state chain: state 0 is
'good' (bit received correctly), state 1 is 'bad' (bit flipped).  The
chain starts in state 0 and makes one transition per bit, so the first
bit of a packet is in error with probability p01.  Steady-state error
rate is eps = p01/(p01+p10) and the mean burst length is 1/p10.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from .gf2 import BitMatrix
from .rng import bit_matrix_from_array, derive_seed, uniform_block


@dataclass(frozen=True)
class ChannelParams:
    """Transition probabilities of the good->bad (p01) and bad->good (p10) edges."""

    p01: float
    p10: float

    def __post_init__(self):
        if not 0.0 <= self.p01 <= 1.0:
            raise ValueError(f"p01 must be in [0, 1], got {self.p01}")
        if not 0.0 < self.p10 <= 1.0:
            raise ValueError(f"p10 must be in (0, 1], got {self.p10}")

    @property
    def eps(self) -> float:
        """Steady-state bit error probability p01/(p01+p10)."""
        if self.p01 == 0.0:
            return 0.0
        return self.p01 / (self.p01 + self.p10)

    @property
    def burst_len(self) -> float:
        """Mean length of an error burst, 1/p10."""
        return 1.0 / self.p10

    @classmethod
    def from_eps_lambda(cls, eps: float, burst_len: float) -> "ChannelParams":
        """Invert (eps, burst length) to (p01, p10): p10 = 1/Λ, p01 = ε/(Λ(1-ε))."""
        if not 0.0 <= eps < 1.0:
            raise ValueError(f"eps must be in [0, 1), got {eps}")
        if burst_len < 1.0:
            raise ValueError(f"burst length must be at least 1, got {burst_len}")
        p10 = 1.0 / burst_len
        p01 = eps / (burst_len * (1.0 - eps))
        if p01 > 1.0:
            raise ValueError(f"(eps={eps}, burst_len={burst_len}) implies p01={p01} > 1")
        return cls(p01=p01, p10=p10)


def apply(params: ChannelParams, x: BitMatrix, seed: int) -> tuple[BitMatrix, BitMatrix]:
    """Transmit X through the channel; returns (Y, E) with Y = X xor E.

    Row i of E is the error trace of one Markov chain over B transitions,
    driven by the substream derive_seed(seed, i).  Per-row substreams make
    the result independent of row evaluation order.
    """
    n, b = x.rows, x.cols
    if n == 0 or b == 0:
        e = BitMatrix.zeros(n, b)
        return x, e
    u = np.empty((n, b), dtype=np.float64)
    for i in range(n):
        u[i] = uniform_block(derive_seed(seed, i), b)
    states = np.empty((n, b), dtype=np.uint8)
    state = np.zeros(n, dtype=bool)
    for col in range(b):
        uc = u[:, col]
        state = np.where(state, uc >= params.p10, uc < params.p01)
        states[:, col] = state
    e = bit_matrix_from_array(states)
    return gf2.add(x, e), e
