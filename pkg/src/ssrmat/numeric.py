"""Exact rational scalars and exact determinants.

Every quantity in this package is a ``fractions.Fraction``: gcd-reduced,
positive denominator, zero stored as 0/1.  ``str()`` of a scalar is the
canonical wire form ("3/2", "-7", "0") used by the CSV and JSON documents.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence, Union

try:  # GMP-backed integers beat plain ints once entries grow past ~1k bits
    from gmpy2 import lcm as _gmp_lcm
    from gmpy2 import mpq as _mpq
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - plain ints are a complete fallback
    _gmp_lcm = None
    _mpq = None
    _mpz = None

_MPZ_THRESHOLD = 1024

Scalar = Fraction

ScalarLike = Union[Fraction, int, str]


def rat(value: ScalarLike) -> Fraction:
    """Coerce an int, canonical string, or Fraction to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def sign_of(x: Fraction) -> int:
    """-1, 0, or +1."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def big_int(x: int) -> int:
    """GMP-backed integer for values past the threshold, when available.

    Plain ints and converted ones mix freely in arithmetic; this only swaps
    the representation so products of huge integers use fast multiplication.
    """
    if _mpz is not None and x.bit_length() > _MPZ_THRESHOLD:
        return _mpz(x)
    return x


def big_lcm(*values: int) -> int:
    """Least common multiple, through GMP for large operands when available."""
    if _gmp_lcm is not None and any(
        int(v).bit_length() > _MPZ_THRESHOLD for v in values
    ):
        acc = values[0]
        for v in values[1:]:
            acc = _gmp_lcm(acc, v)
        return int(acc)
    return lcm(*(int(v) for v in values))


def frac(num: int, den: int) -> Fraction:
    """Exact num/den as a Fraction.

    Same value as ``Fraction(num, den)``; large operands are reduced through
    GMP's gcd, which is far faster than the pure-int path, and the already
    canonical result is placed into the Fraction directly.
    """
    if _mpq is not None and (
        int(num).bit_length() > _MPZ_THRESHOLD
        or int(den).bit_length() > _MPZ_THRESHOLD
    ):
        q = _mpq(num, den)
        out = Fraction.__new__(Fraction)
        out._numerator = int(q.numerator)
        out._denominator = int(q.denominator)
        return out
    return Fraction(int(num), int(den))


def det_int(rows: list[list[int]]) -> int:
    # Fraction-free Bareiss elimination; every // division is exact.
    n = len(rows)
    if _mpz is not None and any(
        x.bit_length() > _MPZ_THRESHOLD for row in rows for x in row
    ):
        rows = [[_mpz(x) for x in row] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri = rows[i]
            rk = rows[k]
            lead = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pivot * ri[j] - lead * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return int(sign * rows[n - 1][n - 1])


def det_exact(grid: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a square grid of scalars.

    Accepts any sequence of equal-length rows (a Mat iterates as one).
    The empty 0x0 grid has determinant 1.
    """
    rows = [list(row) for row in grid]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    if n == 2:
        (a, b), (c, d) = rows
        return Fraction(a * d - b * c)
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return Fraction(
            a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
        )
    # Clear denominators row by row, run integer Bareiss, scale back.
    scale = 1
    cleared: list[list[int]] = []
    for row in rows:
        mult = lcm(*(x.denominator for x in row))
        scale *= mult
        cleared.append([x.numerator * (mult // x.denominator) for x in row])
    return frac(det_int(cleared), scale)
