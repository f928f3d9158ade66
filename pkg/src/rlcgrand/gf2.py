"""Dense GF(2) linear algebra on bit-packed rows.

Matrices are immutable; each row is stored as a Python int bitmask with
bit ``j`` holding column ``j``.  Row XOR is then a single integer XOR,
which keeps Gaussian elimination and matrix products cheap at the sizes
used by the packet simulator (tens of rows and columns).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class InconsistentSystemError(ValueError):
    """A linear system has redundant rows that contradict each other."""


def _check_row_ints(row_ints: Sequence[int], cols: int) -> tuple[int, ...]:
    limit = 1 << cols
    out = tuple(int(r) for r in row_ints)
    for r in out:
        if r < 0 or r >= limit:
            raise ValueError(f"row value {r} does not fit in {cols} columns")
    return out


class BitMatrix:
    """Immutable binary matrix; rows live as int bitmasks (bit j = column j).

    Zero-row and zero-column matrices are legal; they show up when a code
    has no parity packets (N == K).
    """

    __slots__ = ("rows", "cols", "row_ints")

    def __init__(self, rows: int, cols: int, row_ints: Sequence[int]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(row_ints) != rows:
            raise ValueError(f"expected {rows} rows, got {len(row_ints)}")
        self.rows = rows
        self.cols = cols
        self.row_ints = _check_row_ints(row_ints, cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> "BitMatrix":
        """Build from nested 0/1 lists; `cols` is required when rows is empty."""
        lists = [list(r) for r in rows]
        if lists:
            ncols = len(lists[0])
            if any(len(r) != ncols for r in lists):
                raise ValueError("ragged rows")
            if cols is not None and cols != ncols:
                raise ValueError("cols does not match row length")
        else:
            if cols is None:
                raise ValueError("cols required for an empty row list")
            ncols = cols
        ints = []
        for r in lists:
            v = 0
            for j, bit in enumerate(r):
                if bit not in (0, 1):
                    raise ValueError(f"non-binary entry {bit!r}")
                v |= bit << j
            ints.append(v)
        return cls(len(lists), ncols, ints)

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) out of range for {self.rows}x{self.cols}")
        return (self.row_ints[i] >> j) & 1

    def row_bits(self, i: int) -> tuple[int, ...]:
        r = self.row_ints[i]
        return tuple((r >> j) & 1 for j in range(self.cols))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row_bits(i)) for i in range(self.rows)]

    def col_ints(self) -> tuple[int, ...]:
        """Column bitmasks (bit i = row i); the transpose's row view."""
        cols = [0] * self.cols
        for i, r in enumerate(self.row_ints):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return tuple(cols)

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.cols, self.rows, self.col_ints())

    def take_rows(self, indices: Sequence[int]) -> "BitMatrix":
        return BitMatrix(len(indices), self.cols, tuple(self.row_ints[i] for i in indices))

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return BitMatrix(self.rows + other.rows, self.cols, self.row_ints + other.row_ints)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.row_ints)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.row_ints) == (other.rows, other.cols, other.row_ints)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.row_ints))

    def __repr__(self) -> str:
        if self.rows * self.cols > 400:
            return f"BitMatrix({self.rows}x{self.cols})"
        body = ", ".join(str(list(self.row_bits(i))) for i in range(self.rows))
        return f"BitMatrix({self.rows}x{self.cols}: [{body}])"


def matmul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Product over GF(2): result[i][j] = XOR_k a[i][k] & b[k][j]."""
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    for r in a.row_ints:
        acc = 0
        while r:
            low = r & -r
            acc ^= b.row_ints[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(a.rows, b.cols, out)


def add(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Elementwise XOR; shapes must match."""
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ValueError(f"shape mismatch: {a.rows}x{a.cols} vs {b.rows}x{b.cols}")
    return BitMatrix(a.rows, a.cols, tuple(x ^ y for x, y in zip(a.row_ints, b.row_ints)))


def rank(a: BitMatrix) -> int:
    """Rank over GF(2) by row elimination; 0 for empty or all-zero input."""
    work = list(a.row_ints)
    r = 0
    for col in range(a.cols):
        bit = 1 << col
        pivot = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        r += 1
        if r == len(work):
            break
    return r


def solve_unique(a: BitMatrix, b: BitMatrix) -> BitMatrix | None:
    """Solve a·X = b for the unique X when a has full column rank.

    Returns None when rank(a) < a.cols.  Raises InconsistentSystemError when
    the redundant rows of an overdetermined system contradict the pivots,
    which signals corrupted rows being passed off as clean.
    """
    if a.rows < a.cols:
        raise ValueError("system is underdetermined: fewer rows than columns")
    if b.rows != a.rows:
        raise ValueError("right-hand side row count does not match")
    n = a.cols
    # Augmented rows: low n bits from `a`, the rest from `b` shifted past them.
    work = [a.row_ints[i] | (b.row_ints[i] << n) for i in range(a.rows)]
    r = 0
    for col in range(n):
        bit = 1 << col
        pivot = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        r += 1
    if r < n:
        return None
    mask_a = (1 << n) - 1
    for i in range(r, len(work)):
        if work[i] >> n:
            raise InconsistentSystemError("redundant rows are inconsistent with the solution")
    # Reduced form: row i has single bit at its pivot column; order rows by pivot.
    x_rows = [0] * n
    for i in range(r):
        pivot_col = (work[i] & mask_a).bit_length() - 1
        x_rows[pivot_col] = work[i] >> n
    return BitMatrix(n, b.cols, x_rows)


def matvec_check(a: BitMatrix, w: Sequence[int], s: Sequence[int]) -> bool:
    """True iff a·wᵀ == s over GF(2); vacuously true for a 0-row matrix."""
    if len(w) != a.cols:
        raise ValueError(f"vector length {len(w)} does not match {a.cols} columns")
    if len(s) != a.rows:
        raise ValueError(f"target length {len(s)} does not match {a.rows} rows")
    w_mask = 0
    for j, bit in enumerate(w):
        w_mask |= (bit & 1) << j
    for i in range(a.rows):
        if bit_parity(a.row_ints[i] & w_mask) != (s[i] & 1):
            return False
    return True


def bit_parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class ColumnOpsRecord:
    """Record of the reduction that brought a generator to standard form.

    `col_ops` is the K×K invertible matrix M with (row_perm applied to G)·M
    equal to [I_K; P] stacked.  `row_perm` is the identity tuple unless the
    leading K×K block of G was singular and rows had to be reordered.
    """

    col_ops: BitMatrix
    row_perm: tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return self.col_ops == BitMatrix.identity(self.col_ops.rows) and self.row_perm == tuple(
            range(len(self.row_perm))
        )


def to_standard_form(g: BitMatrix) -> tuple[BitMatrix, ColumnOpsRecord] | None:
    """Column-reduce an N×K generator to [I_K; P] form.

    Returns (P, record) where P is (N-K)×K, or None when rank(g) < K.
    Column operations act on the right; when the first K rows of g do not
    already span GF(2)^K a row permutation is recorded as well, so that the
    permuted, column-reduced matrix is exactly [I_K; P].
    """
    n, k = g.rows, g.cols
    if n < k:
        raise ValueError("generator must have at least as many rows as columns")
    cols = list(g.col_ints())
    ops = [1 << i for i in range(k)]  # column view of M, starts as identity
    pivot_rows: list[int] = []
    p = 0
    for r in range(n):
        if p == k:
            break
        row_bit = 1 << r
        hit = next((c for c in range(p, k) if cols[c] & row_bit), None)
        if hit is None:
            continue
        cols[p], cols[hit] = cols[hit], cols[p]
        ops[p], ops[hit] = ops[hit], ops[p]
        for c in range(k):
            if c != p and cols[c] & row_bit:
                cols[c] ^= cols[p]
                ops[c] ^= ops[p]
        pivot_rows.append(r)
        p += 1
    if p < k:
        return None
    rest = [r for r in range(n) if r not in set(pivot_rows)]
    perm = tuple(pivot_rows + rest)
    p_rows = [sum(((cols[c] >> r) & 1) << c for c in range(k)) for r in rest]
    p_mat = BitMatrix(n - k, k, p_rows)
    m_mat = BitMatrix(k, k, ops).transpose()  # ops holds M column-wise
    return p_mat, ColumnOpsRecord(col_ops=m_mat, row_perm=perm)
