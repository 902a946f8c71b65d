"""Shared test utilities: an independent determinant oracle and corpus caches."""

from fractions import Fraction
from functools import lru_cache
from itertools import product

from ssrmat import Mat, ssr_construction


def cofactor_det(rows):
    """Plain Laplace expansion along the first row.

    Deliberately naive and separate from the library's elimination-based
    determinant so the two can check each other.
    """
    n = len(rows)
    assert all(len(r) == n for r in rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        sub = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = Fraction(rows[0][j]) * cofactor_det(sub)
        total += term if j % 2 == 0 else -term
    return total


def oracle_minor(A, row_idx, col_idx):
    """Minor of a Mat computed by the naive oracle."""
    return cofactor_det([[A[i, j] for j in col_idx] for i in row_idx])


def sign_patterns(k):
    """All 2**k sign strings of length k."""
    return ["".join(c) for c in product("+-", repeat=k)]


@lru_cache(maxsize=None)
def built(m, n, signs):
    """Memoized construction; the trace is dropped, tests rebuild it if needed."""
    A, _ = ssr_construction(m, n, signs)
    return A


def grid(A):
    """Mat as a list of lists, for fixture comparison."""
    return [list(row) for row in A]


def mat(rows):
    return Mat(rows)
