"""Immutable exact matrices, sign patterns, and index windows.

All public indices are 1-based: ``A[i, j]`` addresses row i, column j the way
the mathematics is usually written, and ``SignPattern``'s entry k is the sign
required of k×k minors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import SsrError
from .numeric import ScalarLike, big_int, big_lcm, det_int, frac, rat


class Mat:
    """Dense immutable matrix of exact rationals, at least 1x1."""

    __slots__ = ("_rows", "_cleared")

    def __init__(self, entries: Iterable[Iterable[ScalarLike]]):
        rows = tuple(tuple(rat(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise SsrError("a matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise SsrError("all rows must have the same length")
        self._rows = rows
        self._cleared: tuple[tuple[tuple[int, ...], ...], tuple[int, ...]] | None = None

    def _cleared_form(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        # Denominator-cleared copy, built once: row i times scales[i] is
        # integer.  Large values are held as GMP integers when available.
        if self._cleared is None:
            self._cleared = tuple(
                zip(*(self._clear_row(row) for row in self._rows))
            )
        return self._cleared

    @staticmethod
    def _clear_row(row: tuple[Fraction, ...]) -> tuple[tuple[int, ...], int]:
        scale = big_lcm(*(x.denominator for x in row))
        return (
            tuple(big_int(x.numerator * (scale // x.denominator)) for x in row),
            big_int(scale),
        )

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        self._check_row(i)
        self._check_col(j)
        return self._rows[i - 1][j - 1]

    def row(self, i: int) -> tuple[Fraction, ...]:
        self._check_row(i)
        return self._rows[i - 1]

    def col(self, j: int) -> tuple[Fraction, ...]:
        self._check_col(j)
        return tuple(row[j - 1] for row in self._rows)

    def __iter__(self) -> Iterator[tuple[Fraction, ...]]:
        return iter(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._rows)
        return f"Mat([{body}])"

    def _check_row(self, i: int) -> None:
        if not 1 <= i <= self.rows:
            raise SsrError(f"row index {i} out of range 1..{self.rows}")

    def _check_col(self, j: int) -> None:
        if not 1 <= j <= self.cols:
            raise SsrError(f"column index {j} out of range 1..{self.cols}")

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Mat":
        """Rows and columns picked by 1-based index lists, kept in the given order."""
        if not row_idx or not col_idx:
            raise SsrError("submatrix index sets must be nonempty")
        for i in row_idx:
            self._check_row(i)
        for j in col_idx:
            self._check_col(j)
        rows = tuple(
            tuple(self._rows[i - 1][j - 1] for j in col_idx) for i in row_idx
        )
        cleared = None
        if self._cleared is not None and sorted(col_idx) == list(
            range(1, self.cols + 1)
        ):
            # Row scales stay minimal only while every column is kept;
            # dropping a column would leave its denominator baked into the
            # scale and bloat every later determinant.
            ints, scales = self._cleared
            cleared = (
                tuple(tuple(ints[i - 1][j - 1] for j in col_idx) for i in row_idx),
                tuple(scales[i - 1] for i in row_idx),
            )
        return Mat._derived(rows, cleared)

    def _minor_int(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> int:
        """Integer determinant of the denominator-cleared submatrix.

        Same sign as the true minor; the true value is this over the product
        of the picked rows' (positive) scales.  Ratios of minors over one row
        set can be formed from these directly, the shared scale cancels.
        """
        if len(row_idx) != len(col_idx):
            raise SsrError("a minor needs equally many rows and columns")
        for i in row_idx:
            self._check_row(i)
        for j in col_idx:
            self._check_col(j)
        ints, _ = self._cleared_form()
        picked = [[ints[i - 1][j - 1] for j in col_idx] for i in row_idx]
        return det_int(picked)

    def minor(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> Fraction:
        """Determinant of the square submatrix on the given index sets."""
        det = self._minor_int(row_idx, col_idx)
        scale = 1
        for i in row_idx:
            scale *= self._cleared_form()[1][i - 1]
        return frac(det, scale)

    def minor_sign(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> int:
        """Sign of a minor without normalizing the exact value."""
        det = self._minor_int(row_idx, col_idx)
        return (det > 0) - (det < 0)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise SsrError("determinant requires a square matrix")
        n = self.rows
        idx = range(1, n + 1)
        return self.minor(idx, idx)

    @classmethod
    def _derived(
        cls,
        rows: tuple[tuple[Fraction, ...], ...],
        cleared: tuple[tuple[tuple[int, ...], ...], tuple[int, ...]] | None,
    ) -> "Mat":
        # Rows come from an existing Mat, so validation and coercion are done;
        # the caller may hand over an already maintained cleared form.
        out = cls.__new__(cls)
        out._rows = rows
        out._cleared = cleared
        return out

    def transpose(self) -> "Mat":
        # The cached clearing does not carry over: row scales of the
        # transpose are column data here.  Re-clearing is cheap since the
        # stored Fractions already hold canonical denominators.
        return Mat(tuple(zip(*self._rows)))

    def reverse_columns(self) -> "Mat":
        """Column order flipped; same as right-multiplying by the exchange matrix."""
        cleared = None
        if self._cleared is not None:
            ints, scales = self._cleared
            cleared = (tuple(row[::-1] for row in ints), scales)
        return Mat._derived(tuple(row[::-1] for row in self._rows), cleared)

    def insert_col(self, j: int, entries: Sequence[ScalarLike]) -> "Mat":
        """New matrix with the given column at position j (1 <= j <= cols+1)."""
        if not 1 <= j <= self.cols + 1:
            raise SsrError(f"column position {j} out of range 1..{self.cols + 1}")
        col = [rat(x) for x in entries]
        if len(col) != self.rows:
            raise SsrError("column length does not match the row count")
        rows = tuple(
            row[: j - 1] + (col[i],) + row[j - 1 :]
            for i, row in enumerate(self._rows)
        )
        cleared = None
        if self._cleared is not None:
            ints, scales = self._cleared
            new_ints = []
            new_scales = []
            for r, old in enumerate(ints):
                scale = big_lcm(scales[r], col[r].denominator)
                grow = scale // scales[r]
                if grow != 1:
                    old = tuple(x * grow for x in old)
                entry = big_int(col[r].numerator * (scale // col[r].denominator))
                new_ints.append(old[: j - 1] + (entry,) + old[j - 1 :])
                new_scales.append(big_int(scale))
            cleared = (tuple(new_ints), tuple(new_scales))
        return Mat._derived(rows, cleared)

    def insert_row(self, i: int, entries: Sequence[ScalarLike]) -> "Mat":
        """New matrix with the given row at position i (1 <= i <= rows+1)."""
        if not 1 <= i <= self.rows + 1:
            raise SsrError(f"row position {i} out of range 1..{self.rows + 1}")
        row = tuple(rat(x) for x in entries)
        if len(row) != self.cols:
            raise SsrError("row length does not match the column count")
        rows = self._rows[: i - 1] + (row,) + self._rows[i - 1 :]
        cleared = None
        if self._cleared is not None:
            ints, scales = self._cleared
            row_ints, row_scale = self._clear_row(row)
            cleared = (
                ints[: i - 1] + (row_ints,) + ints[i - 1 :],
                scales[: i - 1] + (row_scale,) + scales[i - 1 :],
            )
        return Mat._derived(rows, cleared)

    def delete_col(self, j: int) -> "Mat":
        self._check_col(j)
        if self.cols == 1:
            raise SsrError("cannot delete the only column")
        # No cleared-form carryover: without column j the row scales are no
        # longer minimal, and oversized scales make every minor cost more.
        return Mat(tuple(row[: j - 1] + row[j:] for row in self._rows))

    def delete_row(self, i: int) -> "Mat":
        self._check_row(i)
        if self.rows == 1:
            raise SsrError("cannot delete the only row")
        rows = self._rows[: i - 1] + self._rows[i:]
        cleared = None
        if self._cleared is not None:
            ints, scales = self._cleared
            cleared = (
                ints[: i - 1] + ints[i:],
                scales[: i - 1] + scales[i:],
            )
        return Mat._derived(rows, cleared)

    def with_entry(self, i: int, j: int, value: ScalarLike) -> "Mat":
        self._check_row(i)
        self._check_col(j)
        v = rat(value)
        new_row = self._rows[i - 1][: j - 1] + (v,) + self._rows[i - 1][j:]
        rows = self._rows[: i - 1] + (new_row,) + self._rows[i:]
        cleared = None
        if self._cleared is not None:
            ints, scales = self._cleared
            row_ints, row_scale = self._clear_row(new_row)
            cleared = (
                ints[: i - 1] + (row_ints,) + ints[i:],
                scales[: i - 1] + (row_scale,) + scales[i:],
            )
        return Mat._derived(rows, cleared)


class SignPattern:
    """Required minor signs by size: entry k (1-based) is the sign of k×k minors."""

    __slots__ = ("_signs",)

    def __init__(self, signs: Iterable[int]):
        sig = tuple(signs)
        if not sig:
            raise SsrError("a sign pattern needs at least one entry")
        if any(s not in (1, -1) for s in sig):
            raise SsrError("sign pattern entries must be +1 or -1")
        self._signs = sig

    @classmethod
    def from_string(cls, text: str) -> "SignPattern":
        """Parse a string over '+' and '-', e.g. \"+-+\"."""
        table = {"+": 1, "-": -1}
        try:
            return cls(table[ch] for ch in text)
        except KeyError:
            raise SsrError(f"sign pattern may contain only '+' and '-': {text!r}") from None

    def __len__(self) -> int:
        return len(self._signs)

    def __iter__(self) -> Iterator[int]:
        return iter(self._signs)

    def __getitem__(self, k: int) -> int:
        """Sign required of k×k minors (k is 1-based)."""
        if not 1 <= k <= len(self._signs):
            raise SsrError(f"minor size {k} out of range 1..{len(self._signs)}")
        return self._signs[k - 1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SignPattern):
            return self._signs == other._signs
        if isinstance(other, tuple):
            return self._signs == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._signs)

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self._signs)

    def __repr__(self) -> str:
        return f"SignPattern.from_string({str(self)!r})"

    def prefix(self, p: int) -> "SignPattern":
        if not 1 <= p <= len(self._signs):
            raise SsrError(f"prefix length {p} out of range 1..{len(self._signs)}")
        return SignPattern(self._signs[:p])

    def extended(self, sign: int) -> "SignPattern":
        return SignPattern(self._signs + (sign,))


@dataclass(frozen=True)
class ContiguousSet:
    """Run of consecutive 1-based indices: start, start+1, ..., start+length-1."""

    start: int
    length: int

    def __post_init__(self) -> None:
        if self.start < 1 or self.length < 1:
            raise SsrError("a contiguous set needs start >= 1 and length >= 1")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(range(self.start, self.start + self.length))

    def __contains__(self, i: int) -> bool:
        return self.start <= i < self.start + self.length


def contiguous_sets(n: int, k: int) -> list[ContiguousSet]:
    """All runs of k consecutive indices inside 1..n, in order of start."""
    if not 1 <= k <= n:
        raise SsrError(f"window size {k} out of range 1..{n}")
    return [ContiguousSet(s, k) for s in range(1, n - k + 2)]


def exchange_matrix(n: int) -> Mat:
    """Anti-diagonal of ones; its determinant is (-1)^floor(n/2)."""
    if n < 1:
        raise SsrError("exchange matrix needs order >= 1")
    return Mat(
        tuple(
            tuple(1 if i + j == n - 1 else 0 for j in range(n))
            for i in range(n)
        )
    )


def transform_sign_pattern(pattern: SignPattern) -> SignPattern:
    """Pattern of A with columns reversed: size k picks up a factor (-1)^floor(k/2).

    Applying it twice returns the original pattern.
    """
    return SignPattern(
        s * (-1) ** (k // 2) for k, s in enumerate(pattern, start=1)
    )
