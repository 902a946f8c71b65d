"""Building strictly sign regular matrices and growing them at the borders.

The central primitive prepends a column that is a signed combination
sum_i (-1)^(i-1) y_i c^i of the first q existing columns, with the positive
multipliers y_i chosen large enough (with slack 1/2) that every contiguous
minor through the new column keeps the required strict sign.  Everything else
is conjugation: the other three borders reduce to the left border by
transposing and/or reversing columns, and rectangular-to-square completion
adds a tiny exact perturbation to push the degenerate minors off zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Union

from .errors import ContractViolation, PatternLengthError, SsrError
from .matrix import Mat, SignPattern, contiguous_sets
from .numeric import det_exact, frac
from .verify import verify_full

# Full-oracle verification of pre/postconditions is only affordable for small
# minimum dimension; larger inputs are trusted and flagged in the trace.
ORACLE_LIMIT = 7

PatternLike = Union[SignPattern, str, Iterable[int]]


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    TOP = "top"
    BOTTOM = "bottom"


def as_pattern(pattern: PatternLike) -> SignPattern:
    if isinstance(pattern, SignPattern):
        return pattern
    if isinstance(pattern, str):
        return SignPattern.from_string(pattern)
    return SignPattern(pattern)


def as_side(side: Union[Side, str]) -> Side:
    if isinstance(side, Side):
        return side
    try:
        return Side(side)
    except ValueError:
        raise SsrError(f"side must be one of left/right/top/bottom: {side!r}") from None


@dataclass(frozen=True)
class Perturbation:
    """One exact nudge applied to a degenerate entry.

    ``amount`` lies strictly inside the safe band: its modulus is
    min_minor / (2 * max_minor), where the two bounds are the smallest and
    largest moduli of the nonzero contiguous minors guarding the step.
    """

    row: int
    amount: Fraction
    min_minor: Fraction
    max_minor: Fraction


@dataclass
class ConstructionTrace:
    """Record of every choice a construction made.

    column_coefficients holds, per inserted line, the positive multipliers of
    the signed combination; pattern_extensions the sign chosen whenever a new
    minor size appeared; trusted_input is set when an input was too large for
    the entry oracle and was accepted on faith.
    """

    column_coefficients: list[tuple[Fraction, ...]] = field(default_factory=list)
    perturbations: list[Perturbation] = field(default_factory=list)
    pattern_extensions: list[int] = field(default_factory=list)
    trusted_input: bool = False


def _verified_entry_pattern(
    A: Mat, p: Optional[int] = None, trace: Optional[ConstructionTrace] = None
) -> Optional[SignPattern]:
    """Run the full oracle on an input when affordable.

    Returns the input's sign pattern, or None when the matrix is above the
    oracle limit and was trusted.  Raises ContractViolation on rejection.
    """
    order = min(A.rows, A.cols) if p is None else p
    if min(A.rows, A.cols) <= ORACLE_LIMIT:
        report = verify_full(A, order)
        if not report.accepted:
            raise ContractViolation(
                f"input is not strictly sign regular at order {order}: "
                f"offending minor {report.witness}"
            )
        return report.pattern
    if trace is not None:
        trace.trusted_input = True
    return None


def _check_result(A: Mat, p: int, expected: Optional[SignPattern]) -> None:
    """Postcondition oracle, desk scale only; a failure here is a bug."""
    if min(A.rows, A.cols) > ORACLE_LIMIT:
        return
    report = verify_full(A, p, expected=expected)
    if not report.accepted:
        raise ContractViolation(
            f"construction produced a non-SSR result: offending minor {report.witness}"
        )


def column_relation(A: Mat, k: int) -> tuple[Fraction, ...]:
    """Coefficients expressing column k of a full-rank (n-1)×n matrix.

    Returns x indexed by the remaining columns in ascending order, so that
    c^k = sum_j x_j c^j over j != k.  When A is strictly sign regular the
    coefficients alternate in the column label j: sign(x_j) = (-1)^j for odd
    k and (-1)^(j-1) for even k.
    """
    m, n = A.rows, A.cols
    if m + 1 != n:
        raise SsrError(f"column_relation needs shape (n-1)×n, got {m}×{n}")
    if not 1 <= k <= n:
        raise SsrError(f"column index {k} out of range 1..{n}")
    others = [j for j in range(1, n + 1) if j != k]
    base_rows = [[A[i, j] for j in others] for i in range(1, m + 1)]
    den = det_exact(base_rows)
    if den == 0:
        raise ContractViolation("the remaining columns are linearly dependent")
    target = A.col(k)
    coeffs = []
    for pos in range(m):
        numer = [
            row[:pos] + [target[i]] + row[pos + 1 :]
            for i, row in enumerate(base_rows)
        ]
        coeffs.append(det_exact(numer) / den)
    return tuple(coeffs)


def _left_coefficients(
    A: Mat, q: int, trace: Optional[ConstructionTrace]
) -> list[Fraction]:
    """Positive multipliers y_1..y_q for a new left column over columns 1..q.

    y_q = 1; each earlier y_k is the largest lower bound over all contiguous
    row windows, plus slack 1/2.  The bounds come from requiring every
    contiguous minor through the new column to keep the sign of the matching
    existing minor.
    """
    m = A.rows
    coeffs: list[Fraction] = [Fraction(0)] * (q + 1)
    coeffs[q] = Fraction(1)
    # The already-chosen multipliers over one common denominator, so window
    # bounds accumulate in plain integers; divisions happen once per level.
    common_den = 1
    scaled = [0] * (q + 1)
    scaled[q] = 1
    for k in range(q - 1, 0, -1):
        base_cols = list(range(1, k + 1))
        best_num, best_den = 0, 1
        for window in contiguous_sets(m, k):
            idx = window.indices
            # Integer minors over a shared row scale; the scale cancels in
            # the bound ratio.
            den = A._minor_int(idx, base_cols)
            if den == 0:
                raise ContractViolation(
                    f"zero {k}×{k} minor at rows {idx}; the matrix is not "
                    f"strictly sign regular up to order {q}"
                )
            acc = 0
            for i in range(k + 1, q + 1):
                num = A._minor_int(idx, base_cols[:-1] + [i])
                if num:
                    acc += scaled[i] * num if (i + k) % 2 == 0 else -scaled[i] * num
            # bound = -acc / (common_den * den); compare cross-multiplied.
            bound_num, bound_den = -acc, common_den * den
            if bound_den < 0:
                bound_num, bound_den = -bound_num, -bound_den
            if bound_num * best_den > best_num * bound_den:
                best_num, best_den = bound_num, bound_den
        coeffs[k] = frac(best_num, best_den) + Fraction(1, 2)
        new_den = lcm(common_den, coeffs[k].denominator)
        if new_den != common_den:
            grow = new_den // common_den
            for i in range(k + 1, q + 1):
                scaled[i] *= grow
            common_den = new_den
        scaled[k] = coeffs[k].numerator * (common_den // coeffs[k].denominator)
    result = coeffs[1:]
    if trace is not None:
        trace.column_coefficients.append(tuple(result))
    return result


def _prepend_column(
    A: Mat, q: int, trace: Optional[ConstructionTrace] = None
) -> Mat:
    """[c | A] with c a signed combination of A's first q columns."""
    y = _left_coefficients(A, q, trace)
    ints, scales = A._cleared_form()
    den = 1
    for c in y:
        den = lcm(den, c.denominator)
    scaled = [c.numerator * (den // c.denominator) for c in y]
    new_col = []
    for r in range(A.rows):
        row = ints[r]
        acc = 0
        for i in range(q):
            acc += -scaled[i] * row[i] if i % 2 else scaled[i] * row[i]
        new_col.append(frac(acc, den * scales[r]))
    return A.insert_col(1, new_col)


def _perturb_first_column(
    Ahat: Mat, rel_sign: int, trace: Optional[ConstructionTrace] = None
) -> Mat:
    """Nudge the first m-n entries of column 1 so the top-size minors go strict.

    Ahat is m×(n+1) with rank n (every (n+1)-minor zero).  Entry (k, 1) is
    shifted by rel_sign * min/(2*max) of the moduli of all nonzero contiguous
    minors through row k and column 1, pooled over the current matrix and the
    variant whose first column is the k-th unit vector.  rel_sign = +1 makes
    the new size repeat the previous sign, -1 flips it.
    """
    if rel_sign not in (1, -1):
        raise SsrError("rel_sign must be +1 or -1")
    m, ncols = Ahat.rows, Ahat.cols
    n = ncols - 1
    if n < 1 or m <= n:
        raise SsrError(f"perturbation needs shape m×(n+1) with m > n, got {m}×{ncols}")
    right = Ahat.delete_col(1)
    right_scales = right._cleared_form()[1]
    cur = Ahat
    for k in range(1, m - n + 1):
        # Moduli are carried as (cleared integer, positive scale) pairs and
        # compared by cross multiplication; only the winners are normalized.
        moduli: list[tuple[int, int]] = []
        cur_scales = cur._cleared_form()[1]
        for r in range(1, min(m, ncols) + 1):
            col_win = list(range(1, r + 1))
            for a in range(max(1, k - r + 1), min(k, m - r + 1) + 1):
                idx = list(range(a, a + r))
                v = cur._minor_int(idx, col_win)
                if v:
                    scale = 1
                    for i in idx:
                        scale *= cur_scales[i - 1]
                    moduli.append((abs(v), scale))
                # The same window of the variant whose column 1 is the k-th
                # unit vector: expanding along that column leaves a minor of
                # the unperturbed right block, or an empty one (equal to 1).
                if r == 1:
                    moduli.append((1, 1))
                    continue
                rest = [i for i in idx if i != k]
                v = right._minor_int(rest, col_win[:-1])
                if v:
                    scale = 1
                    for i in rest:
                        scale *= right_scales[i - 1]
                    moduli.append((abs(v), scale))
        if not moduli:
            raise ContractViolation(
                f"no nonzero contiguous minor guards row {k}; "
                "the input is not in the promised form"
            )
        la, ls = moduli[0]
        ha, hs = moduli[0]
        for a, s in moduli[1:]:
            if a * ls < la * s:
                la, ls = a, s
            if a * hs > ha * s:
                ha, hs = a, s
        low = frac(la, ls)
        high = frac(ha, hs)
        delta = rel_sign * frac(la * hs, 2 * ls * ha)
        cur = cur.with_entry(k, 1, cur[k, 1] + delta)
        if trace is not None:
            trace.perturbations.append(Perturbation(k, delta, low, high))
    return cur


def add_col_left(A: Mat, *, trace: Optional[ConstructionTrace] = None) -> Mat:
    """Prepend a column keeping strict sign regularity on the first min(m,n) sizes.

    For m <= n the result is SSR with the same pattern; for m > n the result
    is SSR_n and every (n+1)×(n+1) minor is exactly zero (the new column is a
    combination of the old ones), ready for ``perturb_first_column``.
    """
    pattern = _verified_entry_pattern(A, trace=trace)
    result = _prepend_column(A, min(A.rows, A.cols), trace)
    _check_result(result, min(A.rows, A.cols), pattern)
    return result


def perturb_first_column(
    Ahat: Mat, new_sign: int, *, trace: Optional[ConstructionTrace] = None
) -> Mat:
    """Complete an m×(n+1) rank-n extension to full strict sign regularity.

    ``new_sign`` is relative: +1 repeats the previous size's sign for the new
    (n+1)-size minors, -1 flips it.
    """
    m, ncols = Ahat.rows, Ahat.cols
    n = ncols - 1
    if n < 1 or m <= n:
        raise SsrError(f"perturbation needs shape m×(n+1) with m > n, got {m}×{ncols}")
    pattern: Optional[SignPattern] = None
    if min(m, ncols) <= ORACLE_LIMIT:
        right = Ahat.delete_col(1)
        report = verify_full(right, n)
        if not report.accepted:
            raise ContractViolation(
                f"columns 2..{ncols} are not strictly sign regular: {report.witness}"
            )
        pattern = report.pattern
        hat = verify_full(Ahat, n)
        if not hat.accepted or hat.pattern != pattern:
            raise ContractViolation(
                "the extended matrix does not stay strictly sign regular "
                "through order n with the same pattern"
            )
        if not _in_column_span(right, Ahat.col(1)):
            raise ContractViolation(
                "column 1 is not a combination of the remaining columns"
            )
    elif trace is not None:
        trace.trusted_input = True
    result = _perturb_first_column(Ahat, new_sign, trace)
    if pattern is not None:
        _check_result(result, n + 1, pattern.extended(new_sign * pattern[n]))
    return result


def _in_column_span(A: Mat, column: tuple[Fraction, ...]) -> bool:
    """Exact test that the vector lies in A's column span (A has full column rank)."""
    m, n = A.rows, A.cols
    base_rows = [[A[i, j] for j in range(1, n + 1)] for i in range(1, n + 1)]
    den = det_exact(base_rows)
    if den == 0:
        raise ContractViolation("leading rows are singular; matrix is not SSR")
    x = []
    for pos in range(n):
        numer = [
            row[:pos] + [column[i]] + row[pos + 1 :]
            for i, row in enumerate(base_rows)
        ]
        x.append(det_exact(numer) / den)
    return all(
        sum(x[j - 1] * A[r, j] for j in range(1, n + 1)) == column[r - 1]
        for r in range(1, m + 1)
    )


def _conjugate_in(A: Mat, side: Side) -> Mat:
    if side is Side.LEFT:
        return A
    if side is Side.RIGHT:
        return A.reverse_columns()
    if side is Side.TOP:
        return A.transpose()
    return A.transpose().reverse_columns()


def _conjugate_out(W: Mat, side: Side) -> Mat:
    if side is Side.LEFT:
        return W
    if side is Side.RIGHT:
        return W.reverse_columns()
    if side is Side.TOP:
        return W.transpose()
    return W.reverse_columns().transpose()


def _reversal_sign(side: Side, new_size: int) -> int:
    """Sign correction the column reversal imposes on the new size's choice.

    Reversing columns multiplies size-k minors by (-1)^floor(k/2), so a
    relative choice between sizes nu-1 and nu flips exactly when nu is even.
    """
    if side in (Side.LEFT, Side.TOP):
        return 1
    return -1 if new_size % 2 == 0 else 1


def _extend_core(
    A: Mat,
    side: Side,
    rel_sign: Optional[int],
    trace: Optional[ConstructionTrace],
    q: Optional[int] = None,
) -> Mat:
    """One border extension, perturbing to the requested sign when min(m,n) grows."""
    W = _conjugate_in(A, side)
    width = min(W.rows, W.cols) if q is None else q
    W = _prepend_column(W, width, trace)
    if rel_sign is not None:
        nu = min(A.rows, A.cols) + 1
        W = _perturb_first_column(W, rel_sign * _reversal_sign(side, nu), trace)
    return _conjugate_out(W, side)


def extension_grows_min(rows: int, cols: int, side: Union[Side, str]) -> bool:
    """Whether adding a line on this side increases min(rows, cols)."""
    side = as_side(side)
    if side in (Side.LEFT, Side.RIGHT):
        return rows > cols
    return cols > rows


def extend_border(
    A: Mat,
    side: Union[Side, str],
    new_size_sign: Optional[int] = None,
    *,
    trace: Optional[ConstructionTrace] = None,
) -> Mat:
    """Add one line on the given side, preserving strict sign regularity.

    When the extension increases min(m,n), a new minor size appears and
    ``new_size_sign`` must say how its sign relates to the previous size:
    +1 repeats it, -1 flips it.  When min(m,n) stays put the argument must be
    omitted.  The old matrix sits inside the result unchanged, so deleting the
    added line gives back the input bit for bit.
    """
    side = as_side(side)
    grows = extension_grows_min(A.rows, A.cols, side)
    if grows and new_size_sign is None:
        raise SsrError(
            "this extension creates a new minor size; pass new_size_sign=+1 "
            "to repeat the previous sign or -1 to flip it"
        )
    if not grows and new_size_sign is not None:
        raise ContractViolation(
            "no new minor size appears here; new_size_sign must be omitted"
        )
    if new_size_sign is not None and new_size_sign not in (1, -1):
        raise SsrError("new_size_sign must be +1 or -1")
    pattern = _verified_entry_pattern(A, trace=trace)
    result = _extend_core(A, side, new_size_sign if grows else None, trace)
    if grows and pattern is not None and trace is not None:
        trace.pattern_extensions.append(new_size_sign * pattern[len(pattern)])
    expected = None
    if pattern is not None:
        expected = (
            pattern.extended(new_size_sign * pattern[len(pattern)]) if grows else pattern
        )
    _check_result(result, min(result.rows, result.cols), expected)
    return result


_SEEDS = {
    (1, 1): Mat([[2, 1], [1, 1]]),
    (1, -1): Mat([[1, 1], [2, 1]]),
    (-1, 1): Mat([[-2, -1], [-1, -1]]),
    (-1, -1): Mat([[-1, -1], [-2, -1]]),
}


def ssr_construction(
    m: int, n: int, pattern: PatternLike
) -> tuple[Mat, ConstructionTrace]:
    """Build an m×n strictly sign regular matrix with the given sign pattern.

    The pattern must have length min(m, n).  Deterministic: the same arguments
    always produce the same matrix.
    """
    if m < 1 or n < 1:
        raise SsrError("matrix dimensions must be at least 1")
    eps = as_pattern(pattern)
    low = min(m, n)
    if len(eps) != low:
        raise PatternLengthError()
    trace = ConstructionTrace()
    if low == 1:
        value = eps[1]
        return Mat([[value] * n for _ in range(m)]), trace
    A = _SEEDS[(eps[1], eps[2])]
    for _ in range(2 * low - 4):
        r0, c0 = A.rows, A.cols
        A = _prepend_column(A, min(r0, c0), trace)
        if r0 == c0 + 1:
            rel = 1 if eps[r0] == eps[r0 - 1] else -1
            A = _perturb_first_column(A, rel, trace)
            trace.pattern_extensions.append(eps[r0])
        A = A.transpose()
    assert A.rows == A.cols == low
    for _ in range(abs(m - n)):
        A = _prepend_column(A, low, trace)
    if A.rows != m:
        A = A.transpose()
    assert (A.rows, A.cols) == (m, n)
    _check_result(A, low, eps)
    return A, trace


def ssr_p_construction(
    m: int, n: int, p: int, pattern: PatternLike
) -> tuple[Mat, ConstructionTrace]:
    """Build an m×n matrix that is SSR_p with the given length-p pattern.

    Requires p < min(m, n); at p = min(m, n) use ``ssr_construction``.
    Starts from a p×p fully SSR block and pads line by line, each new line a
    combination of the first p lines on its axis, so all minors beyond size p
    vanish while sizes 1..p keep their strict signs.
    """
    if p < 1:
        raise SsrError("order p must be at least 1")
    if p >= min(m, n):
        raise SsrError(
            f"order p={p} must be strictly below min(m, n)={min(m, n)}; "
            "use ssr_construction for the full order"
        )
    eps = as_pattern(pattern)
    if len(eps) != p:
        raise PatternLengthError()
    A, trace = ssr_construction(p, p, eps)
    for _ in range(m - p):
        A = _prepend_column(A, p, trace)
    A = A.transpose()
    for _ in range(n - p):
        A = _prepend_column(A, p, trace)
    assert (A.rows, A.cols) == (m, n)
    _check_result(A, p, eps)
    return A, trace


def extend_border_ssr_p(
    A: Mat,
    p: int,
    side: Union[Side, str],
    *,
    trace: Optional[ConstructionTrace] = None,
) -> Mat:
    """Add one line on the given side, preserving SSR_p.

    The new line is a signed combination of the nearest p existing lines on
    its axis, so minors of size <= p through it keep their signs and no new
    strict size is created.  Allows p up to min(m, n).
    """
    side = as_side(side)
    if not 1 <= p <= min(A.rows, A.cols):
        raise SsrError(f"order p={p} out of range 1..{min(A.rows, A.cols)}")
    pattern: Optional[SignPattern] = None
    if min(A.rows, A.cols) <= ORACLE_LIMIT:
        report = verify_full(A, p)
        if not report.accepted:
            raise ContractViolation(
                f"input is not SSR at order {p}: offending minor {report.witness}"
            )
        pattern = report.pattern
    elif trace is not None:
        trace.trusted_input = True
    result = _extend_core(A, side, None, trace, q=p)
    _check_result(result, p, pattern)
    return result
