"""Exact strict sign regularity checks.

A matrix is strictly sign regular of order p, written SSR_p, when for every
size k <= p all its k×k minors are nonzero and share one sign eps_k.  SSR means
SSR_p at the full order p = min(rows, cols).

``verify_contiguous`` checks only minors on consecutive row and column
windows, which is equivalent to the full property (the classical
contiguous-minor criterion); ``verify_full`` enumerates every minor and serves
as the trusted oracle.  Both are deterministic: the reported witness is always
the first offending minor in scan order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Union

from .errors import SsrError
from .matrix import Mat, SignPattern, contiguous_sets

PatternLike = Union[SignPattern, str, "tuple[int, ...]", "list[int]"]


@dataclass(frozen=True)
class Witness:
    """A minor that breaks strict sign regularity: zero or wrongly signed."""

    row_idx: tuple[int, ...]
    col_idx: tuple[int, ...]
    value: Fraction

    def __str__(self) -> str:
        rows = ",".join(str(i) for i in self.row_idx)
        cols = ",".join(str(j) for j in self.col_idx)
        return f"k={len(self.row_idx)} rows={rows} cols={cols} minor={self.value}"


@dataclass(frozen=True)
class SsrReport:
    """Outcome of a verification run.

    ``accepted`` with the inferred (or confirmed) pattern, or rejected with
    the first offending minor in scan order.
    """

    accepted: bool
    order_checked: int
    pattern: Optional[SignPattern]
    witness: Optional[Witness]

    def __post_init__(self) -> None:
        if self.accepted:
            assert self.witness is None
            assert self.pattern is not None and len(self.pattern) == self.order_checked
        else:
            assert self.witness is not None


def _scan(
    A: Mat,
    p: int,
    expected: Optional[PatternLike],
    index_sets,
) -> SsrReport:
    if not 1 <= p <= min(A.rows, A.cols):
        raise SsrError(f"order {p} out of range 1..{min(A.rows, A.cols)}")
    if isinstance(expected, str):
        expected = SignPattern.from_string(expected)
    elif expected is not None and not isinstance(expected, SignPattern):
        expected = SignPattern(expected)
    if expected is not None and len(expected) != p:
        raise SsrError(
            f"expected pattern has length {len(expected)}, order checked is {p}"
        )
    found: list[int] = []
    for k in range(1, p + 1):
        required = expected[k] if expected is not None else 0
        for I in index_sets(A.rows, k):
            for J in index_sets(A.cols, k):
                s = A.minor_sign(I, J)
                if s == 0 or (required != 0 and s != required):
                    return SsrReport(
                        accepted=False,
                        order_checked=p,
                        pattern=None,
                        witness=Witness(tuple(I), tuple(J), A.minor(I, J)),
                    )
                required = s
        found.append(required)
    return SsrReport(
        accepted=True,
        order_checked=p,
        pattern=SignPattern(found),
        witness=None,
    )


def _contiguous_indices(n: int, k: int) -> Iterator[tuple[int, ...]]:
    for window in contiguous_sets(n, k):
        yield window.indices


def _all_indices(n: int, k: int) -> Iterator[tuple[int, ...]]:
    return combinations(range(1, n + 1), k)


def verify_contiguous(
    A: Mat, p: int, expected: Optional[PatternLike] = None
) -> SsrReport:
    """Check SSR_p on contiguous windows only (equivalent to the full property).

    Minors are scanned by size, then row start, then column start; the witness
    on rejection is the first offender in that order.  When ``expected`` is
    omitted the sign of each size is inferred from the first minor scanned;
    it may be given as a ``SignPattern``, a string like ``"+-"``, or a
    sequence of ``+1``/``-1``.
    """
    return _scan(A, p, expected, _contiguous_indices)


def verify_full(A: Mat, p: int, expected: Optional[PatternLike] = None) -> SsrReport:
    """Check SSR_p on every minor up to size p (the exhaustive oracle).

    Index sets are scanned in lexicographic order within each size.
    """
    return _scan(A, p, expected, _all_indices)


def infer_sign_pattern(A: Mat) -> Union[SignPattern, Witness]:
    """Full-order sign pattern of A, or the witness showing A is not SSR."""
    report = verify_full(A, min(A.rows, A.cols))
    if report.accepted:
        assert report.pattern is not None
        return report.pattern
    assert report.witness is not None
    return report.witness
