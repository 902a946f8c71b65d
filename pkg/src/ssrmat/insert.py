"""Inserting a line between two consecutive lines of an SSR or SSR_p matrix.

The workhorse handles an even-order square matrix split exactly in half: the
new middle column is a signed combination sum_i (-1)^(i-1) y_i of mirrored
column pairs around the gap, with positive multipliers chosen bottom-up so
every contiguous minor through the new column keeps its required sign.  The
general case pads the matrix out to that centered shape with border
extensions, inserts, and trims the padding away; the trimmed rows and columns
contain the original matrix unchanged, so the result is the input plus one
line.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .construct import (
    ConstructionTrace,
    ORACLE_LIMIT,
    Side,
    _extend_core,
    _verified_entry_pattern,
    _check_result,
    extension_grows_min,
)
from .errors import ContractViolation, SsrError
from .matrix import Mat, SignPattern
from .numeric import frac, sign_of


def insertion_windows(
    mu: int, left_max: int, right_max: int, size_cap: int
) -> list[tuple[int, int]]:
    """All (l, r) column-split shapes of contiguous windows through the new column.

    A window takes l columns left of the insertion point and r columns right
    of it (plus the new column itself, so its size is l + r + 1), and this
    enumerates the splits with min(l, r) = mu, bounded by the available
    columns on each side and the size cap.  Sorted by (l, r).
    """
    if mu < 0:
        raise SsrError("window level must be >= 0")
    out = []
    for l in range(mu, left_max + 1):
        for r in range(mu, right_max + 1):
            if min(l, r) == mu and l + r + 1 <= size_cap:
                out.append((l, r))
    return out


def _centered_coefficients(
    A: Mat,
    center: int,
    num_pairs: int,
    size_cap: int,
    pattern: Optional[SignPattern],
    trace: Optional[ConstructionTrace],
    symmetric_top: bool = False,
) -> list[Fraction]:
    """Multipliers y_1..y_num_pairs for a column inserted after ``center``.

    The new column is sum_i (-1)^(i-1) y_i (col(center-i+1) + col(center+i)).
    y_num_pairs = 1; descending from there, each y is bounded below by the
    windows whose nearer flank has exactly i-1 columns (the pairs further in
    duplicate existing columns there and drop out), and gets slack 1/2.

    Window determinants are expanded by linearity in the new column: the pair
    columns either duplicate a window column (contributing zero) or equal an
    existing minor of A up to the parity of sliding them into sorted position.
    The multiplier of the unknown y must carry the window size's sign; that is
    checked, not assumed, whenever the pattern is known.
    """
    m, n = A.rows, A.cols
    if not num_pairs <= center <= n - num_pairs:
        raise SsrError("not enough columns on each side of the insertion point")
    y: list[Fraction] = [Fraction(0)] * (num_pairs + 1)
    y[num_pairs] = Fraction(1)
    # The chosen multipliers over one common denominator, so window bounds
    # accumulate in plain integers; divisions happen once per level.
    common_den = 1
    scaled = [0] * (num_pairs + 1)
    scaled[num_pairs] = 1

    cap = min(size_cap, m)
    if symmetric_top:
        top = insertion_windows(num_pairs - 1, center, n - center, cap)
        assert all(l == r for l, r in top), (
            "odd order: the top multiplier should only meet symmetric windows"
        )
    for j in range(num_pairs - 1, 0, -1):
        mu = j - 1
        best_num, best_den = 0, 1
        for l, r in insertion_windows(mu, center, n - center, cap):
            d = l + r + 1
            block = list(range(center - l + 1, center + r + 1))
            sign_l = -1 if l % 2 else 1
            sign_r = -1 if r % 2 else 1
            for start in range(1, m - d + 2):
                row_idx = range(start, start + d)
                # Integer determinants share one positive row scale, so the
                # scale cancels from every ratio formed below.
                terms = []
                for idx in range(j, num_pairs + 1):
                    acc = 0
                    if idx > l:
                        acc += sign_l * A._minor_int(
                            row_idx, [center - idx + 1] + block
                        )
                    if idx > r:
                        acc += sign_r * A._minor_int(
                            row_idx, block + [center + idx]
                        )
                    terms.append(acc)
                slope = terms[0] if j % 2 else -terms[0]
                if slope == 0:
                    raise ContractViolation(
                        f"degenerate {d}×{d} window at rows {start}..{start + d - 1}; "
                        "the matrix is not strictly sign regular"
                    )
                if pattern is not None and sign_of(slope) != pattern[d]:
                    raise ContractViolation(
                        f"window at rows {start}..{start + d - 1} drives the new "
                        f"column against the size-{d} sign; input is not SSR"
                    )
                offset = 0
                for idx, acc in enumerate(terms[1:], start=j + 1):
                    if acc:
                        offset += scaled[idx] * acc if idx % 2 else -scaled[idx] * acc
                # bound = -offset / (common_den * slope), cross-compared.
                bound_num, bound_den = -offset, common_den * slope
                if bound_den < 0:
                    bound_num, bound_den = -bound_num, -bound_den
                if bound_num * best_den > best_num * bound_den:
                    best_num, best_den = bound_num, bound_den
        y[j] = frac(best_num, best_den) + Fraction(1, 2)
        new_den = lcm(common_den, y[j].denominator)
        if new_den != common_den:
            grow = new_den // common_den
            for i in range(j + 1, num_pairs + 1):
                scaled[i] *= grow
            common_den = new_den
        scaled[j] = y[j].numerator * (common_den // y[j].denominator)
    result = y[1:]
    if trace is not None:
        trace.column_coefficients.append(tuple(result))
    return result


def _build_centered_column(
    A: Mat, center: int, y: Sequence[Fraction]
) -> list[Fraction]:
    ints, scales = A._cleared_form()
    den = 1
    for c in y:
        den = lcm(den, c.denominator)
    scaled = [c.numerator * (den // c.denominator) for c in y]
    vals = []
    for i in range(A.rows):
        row = ints[i]
        acc = 0
        for idx, yi in enumerate(scaled, start=1):
            term = yi * (row[center - idx] + row[center + idx - 1])
            acc += term if idx % 2 == 1 else -term
        vals.append(frac(acc, den * scales[i]))
    return vals


def _middle_core(
    A: Mat,
    pattern: Optional[SignPattern],
    trace: Optional[ConstructionTrace],
) -> Mat:
    half = A.rows // 2
    y = _centered_coefficients(A, half, half, A.rows, pattern, trace)
    return A.insert_col(half + 1, _build_centered_column(A, half, y))


def insert_middle_even_square(
    A: Mat, *, trace: Optional[ConstructionTrace] = None
) -> Mat:
    """Insert a column dead-center into an even-order square SSR matrix.

    The result is n×(n+1) with the same sign pattern; columns 1..n/2 and
    n/2+2..n+1 are the original matrix.
    """
    if A.rows != A.cols:
        raise SsrError(f"needs a square matrix, got {A.rows}×{A.cols}")
    if A.rows % 2:
        raise SsrError(f"needs an even order, got {A.rows}")
    pattern = _verified_entry_pattern(A, trace=trace)
    result = _middle_core(A, pattern, trace)
    _check_result(result, A.rows, pattern)
    return result


def _pad_to_centered_square(
    A: Mat,
    position: int,
    new_size_sign: Optional[int],
    pattern: Optional[SignPattern],
    trace: Optional[ConstructionTrace],
) -> tuple[Mat, Optional[SignPattern], int, int]:
    """Grow A to an even square with the insertion gap exactly in the middle.

    Returns the padded matrix, its tracked pattern, and the (left, top) pad
    counts needed to trim the result back down.
    """
    m, n = A.rows, A.cols
    half = max(position, n - position, (m + 1) // 2)
    pads = (
        [Side.LEFT] * (half - position)
        + [Side.RIGHT] * (half - (n - position))
        + [Side.TOP] * ((2 * half - m + 1) // 2)
        + [Side.BOTTOM] * ((2 * half - m) - (2 * half - m + 1) // 2)
    )
    cur = A
    cur_pattern = pattern
    pending_sign = new_size_sign
    for side in pads:
        if extension_grows_min(cur.rows, cur.cols, side):
            rel = pending_sign if pending_sign is not None else 1
            pending_sign = None
            cur = _extend_core(cur, side, rel, trace)
            if cur_pattern is not None:
                cur_pattern = cur_pattern.extended(rel * cur_pattern[len(cur_pattern)])
        else:
            cur = _extend_core(cur, side, None, trace)
    assert cur.rows == cur.cols == 2 * half
    return cur, cur_pattern, half - position, (2 * half - m + 1) // 2


def _insert_col(
    A: Mat,
    position: int,
    new_size_sign: Optional[int],
    trace: Optional[ConstructionTrace],
) -> Mat:
    m, n = A.rows, A.cols
    if not 1 <= position <= n - 1:
        raise SsrError(
            f"insertion position {position} out of range 1..{n - 1} "
            "(the new line goes between two existing ones)"
        )
    grows = m > n
    if grows and new_size_sign is None:
        raise SsrError(
            "this insertion creates a new minor size; pass new_size_sign=+1 "
            "to repeat the previous sign or -1 to flip it"
        )
    if not grows and new_size_sign is not None:
        raise ContractViolation(
            "no new minor size appears here; new_size_sign must be omitted"
        )
    if new_size_sign is not None and new_size_sign not in (1, -1):
        raise SsrError("new_size_sign must be +1 or -1")
    pattern = _verified_entry_pattern(A, trace=trace)
    padded, padded_pattern, left, top = _pad_to_centered_square(
        A, position, new_size_sign if grows else None, pattern, trace
    )
    inserted = _middle_core(padded, padded_pattern, trace)
    result = inserted.submatrix(
        range(top + 1, top + m + 1), range(left + 1, left + n + 2)
    )
    expected = None
    if pattern is not None:
        expected = (
            pattern.extended(new_size_sign * pattern[len(pattern)]) if grows else pattern
        )
    _check_result(result, min(m, n + 1), expected)
    return result


def insert_line(
    A: Mat,
    axis: str,
    position: int,
    new_size_sign: Optional[int] = None,
    *,
    trace: Optional[ConstructionTrace] = None,
) -> Mat:
    """Insert a row or column between positions ``position`` and ``position+1``.

    axis is "row" or "col".  The original lines are untouched: deleting the
    inserted line returns the input exactly.  When the insertion grows
    min(m,n), a new minor size appears and ``new_size_sign`` must choose its
    sign relative to the previous size (+1 repeats, -1 flips); otherwise the
    argument must be omitted.
    """
    if axis == "col":
        return _insert_col(A, position, new_size_sign, trace)
    if axis == "row":
        return _insert_col(A.transpose(), position, new_size_sign, trace).transpose()
    raise SsrError(f"axis must be 'row' or 'col': {axis!r}")


def _insert_col_ssr_p(
    A: Mat,
    p: int,
    position: int,
    trace: Optional[ConstructionTrace],
) -> Mat:
    m, n = A.rows, A.cols
    if not 1 <= p < min(m, n):
        raise SsrError(f"order p={p} out of range 1..{min(m, n) - 1}")
    if not 1 <= position <= n - 1:
        raise SsrError(
            f"insertion position {position} out of range 1..{n - 1} "
            "(the new line goes between two existing ones)"
        )
    pattern: Optional[SignPattern] = None
    if min(m, n) <= ORACLE_LIMIT:
        from .verify import verify_full

        report = verify_full(A, p)
        if not report.accepted:
            raise ContractViolation(
                f"input is not SSR at order {p}: offending minor {report.witness}"
            )
        pattern = report.pattern
    elif trace is not None:
        trace.trusted_input = True
    if p == 1:
        new_col = [A[i, position] + A[i, position + 1] for i in range(1, m + 1)]
        result = A.insert_col(position + 1, new_col)
        _check_result(result, p, pattern)
        return result
    # Normalize: the combination reaches p-1 columns to each side, so pad the
    # short side(s) with order-p border extensions and trim them afterwards.
    left = max(0, (p - 1) - position)
    right = max(0, (p - 1) - (n - position))
    cur = A
    for _ in range(left):
        cur = _extend_core(cur, Side.LEFT, None, trace, q=p)
    for _ in range(right):
        cur = _extend_core(cur, Side.RIGHT, None, trace, q=p)
    center = position + left
    pairs = (p + 1) // 2
    y = _centered_coefficients(
        cur, center, pairs, p, pattern, trace, symmetric_top=bool(p % 2)
    )
    inserted = cur.insert_col(center + 1, _build_centered_column(cur, center, y))
    result = inserted.submatrix(
        range(1, m + 1), range(left + 1, left + n + 2)
    )
    _check_result(result, p, pattern)
    return result


def insert_line_ssr_p(
    A: Mat,
    p: int,
    axis: str,
    position: int,
    *,
    trace: Optional[ConstructionTrace] = None,
) -> Mat:
    """Insert a row or column into an SSR_p matrix, preserving order p.

    Requires p < min(m, n).  The inserted line is a signed combination of the
    p-1 nearest lines on each side (at p = 1, the sum of its two neighbours);
    no minor size beyond p is controlled, matching the order-p contract.
    """
    if axis == "col":
        return _insert_col_ssr_p(A, p, position, trace)
    if axis == "row":
        return _insert_col_ssr_p(A.transpose(), p, position, trace).transpose()
    raise SsrError(f"axis must be 'row' or 'col': {axis!r}")
