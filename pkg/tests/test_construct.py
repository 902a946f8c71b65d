from fractions import Fraction

import pytest

from helpers import built, grid, sign_patterns
from ssrmat import (
    ConstructionTrace,
    ContractViolation,
    Mat,
    PatternLengthError,
    SignPattern,
    SsrError,
    add_col_left,
    column_relation,
    contiguous_sets,
    extend_border,
    extend_border_ssr_p,
    extension_grows_min,
    perturb_first_column,
    ssr_construction,
    ssr_p_construction,
    verify_full,
)
from ssrmat.construct import ORACLE_LIMIT

F = Fraction

COUNTEREXAMPLE = Mat([[10, 1, 3, 6], [1, 1, 2, 1], [1, 2, 3, 1]])


# --- column_relation -------------------------------------------------------


def test_column_relation_fixtures():
    # c1 = c2 - c3 + 2 c4, and so on; verified by hand.
    assert column_relation(COUNTEREXAMPLE, 1) == (1, -1, 2)
    assert column_relation(COUNTEREXAMPLE, 2) == (1, 1, -2)
    assert column_relation(COUNTEREXAMPLE, 3) == (-1, 1, 2)
    assert column_relation(COUNTEREXAMPLE, 4) == (F(1, 2), F(-1, 2), F(1, 2))


def test_column_relation_recomposes_exactly():
    for A in [COUNTEREXAMPLE, built(3, 4, "+--"), built(4, 5, "-+-+")]:
        n = A.cols
        for k in range(1, n + 1):
            x = column_relation(A, k)
            others = [j for j in range(1, n + 1) if j != k]
            for i in range(1, A.rows + 1):
                assert A[i, k] == sum(
                    c * A[i, j] for c, j in zip(x, others)
                )


def test_column_relation_alternating_signs_on_ssr():
    # For an SSR matrix the coefficient of column j in the expansion of
    # column k has sign (-1)^j for odd k and (-1)^(j-1) for even k.
    for n in range(3, 6):
        for signs in sign_patterns(n - 1):
            A = built(n - 1, n, signs)
            for k in range(1, n + 1):
                x = column_relation(A, k)
                others = [j for j in range(1, n + 1) if j != k]
                for j, c in zip(others, x):
                    assert c != 0
                    want = (-1) ** j if k % 2 == 1 else (-1) ** (j - 1)
                    assert (1 if c > 0 else -1) == want, (n, signs, k, x)


def test_column_relation_errors():
    with pytest.raises(SsrError):
        column_relation(Mat([[1, 2], [3, 4]]), 1)  # not (n-1) x n
    with pytest.raises(SsrError):
        column_relation(COUNTEREXAMPLE, 5)
    with pytest.raises(ContractViolation):
        column_relation(Mat([[1, 1, 2], [2, 2, 3]]), 3)  # dependent remainder


# --- add_col_left ----------------------------------------------------------


def test_add_col_left_fixtures():
    assert grid(add_col_left(Mat([[1]]))) == [[1, 1]]
    B = add_col_left(Mat([[2, 1], [1, 1]]))
    assert grid(B) == [[2, 2, 1], [F(1, 2), 1, 1]]
    assert verify_full(B, 2).pattern == (1, 1)


def test_add_col_left_wide_keeps_pattern():
    for signs in sign_patterns(3):
        A = built(3, 4, signs)
        B = add_col_left(A)
        assert B.shape == (3, 5)
        assert B.delete_col(1) == A
        assert verify_full(B, 3).pattern == SignPattern.from_string(signs)


def test_add_col_left_tall_gives_rank_deficient_square_sizes():
    A = built(3, 2, "+-")
    B = add_col_left(A)
    assert B.shape == (3, 3)
    assert B.det() == 0
    assert verify_full(B, 2).pattern == (1, -1)


def test_add_col_left_rejects_non_ssr():
    with pytest.raises(ContractViolation):
        add_col_left(COUNTEREXAMPLE)


def test_add_col_left_trace_coefficients_positive():
    tr = ConstructionTrace()
    add_col_left(built(3, 4, "+-+"), trace=tr)
    assert len(tr.column_coefficients) == 1
    coeffs = tr.column_coefficients[0]
    assert len(coeffs) == 3
    assert all(c > 0 for c in coeffs)
    assert coeffs[-1] == 1
    assert not tr.trusted_input


# --- perturb_first_column --------------------------------------------------


def test_perturbation_completes_tall_extension():
    # 4x2 -> add a column -> 4x3 with zero 3-minors -> nudge to strictness.
    A = built(4, 2, "+-")
    Ahat = add_col_left(A)
    for new_sign, full in [(1, "+--"), (-1, "+-+")]:
        B = perturb_first_column(Ahat, new_sign)
        report = verify_full(B, 3)
        assert report.accepted
        assert report.pattern == SignPattern.from_string(full)
        # Only column 1 moved, and only in rows 1..m-n.
        assert B.delete_col(1) == A
        assert B[3, 1] == Ahat[3, 1] and B[4, 1] == Ahat[4, 1]


def test_perturbation_moves_only_the_top_entries():
    A = built(5, 3, "-+-")
    Ahat = add_col_left(A)
    B = perturb_first_column(Ahat, 1)
    changed = [
        i for i in range(1, 6) if B[i, 1] != Ahat[i, 1]
    ]
    assert changed == [1, 2]  # m - n = 2 degenerate entries
    assert B.delete_col(1) == A
    assert verify_full(B, 4).accepted


def test_perturbation_trace_band_and_sign():
    for new_sign in (1, -1):
        tr = ConstructionTrace()
        Ahat = add_col_left(built(4, 2, "++"))
        perturb_first_column(Ahat, new_sign, trace=tr)
        assert len(tr.perturbations) == 2
        for pert in tr.perturbations:
            assert pert.amount != 0
            assert (1 if pert.amount > 0 else -1) == new_sign
            assert abs(pert.amount) == pert.min_minor / (2 * pert.max_minor)
            assert 0 < abs(pert.amount) < pert.min_minor / pert.max_minor
            assert 0 < pert.min_minor <= pert.max_minor


def test_perturbation_errors():
    with pytest.raises(SsrError):
        perturb_first_column(built(3, 3, "+++"), 1)  # not m > n
    with pytest.raises(SsrError):
        perturb_first_column(add_col_left(built(4, 2, "++")), 0)
    with pytest.raises(ContractViolation):
        # Column 1 independent of the rest: not the promised degenerate form.
        perturb_first_column(built(3, 2, "++"), 1)
    with pytest.raises(ContractViolation):
        # Zero first column: the extended matrix is not SSR through order n.
        perturb_first_column(Mat([[0, 1, 1], [0, 1, 1], [0, 1, 2]]), 1)


# --- extend_border ---------------------------------------------------------


def test_extension_grows_min():
    assert extension_grows_min(4, 3, "left")
    assert extension_grows_min(4, 3, "right")
    assert not extension_grows_min(4, 3, "top")
    assert not extension_grows_min(3, 4, "left")
    assert extension_grows_min(3, 4, "bottom")
    assert not extension_grows_min(3, 3, "left")
    assert not extension_grows_min(3, 3, "top")
    with pytest.raises(SsrError):
        extension_grows_min(3, 3, "up")


def test_extend_border_round_trip_all_sides():
    A = built(3, 4, "+-+")
    pat = SignPattern.from_string("+-+")
    for side, undo in [
        ("left", lambda B: B.delete_col(1)),
        ("right", lambda B: B.delete_col(5)),
    ]:
        B = extend_border(A, side)
        assert undo(B) == A
        assert verify_full(B, 3).pattern == pat
    for side, undo, sign, full in [
        ("top", lambda B: B.delete_row(1), 1, "+-++"),
        ("top", lambda B: B.delete_row(1), -1, "+-+-"),
        ("bottom", lambda B: B.delete_row(4), 1, "+-++"),
        ("bottom", lambda B: B.delete_row(4), -1, "+-+-"),
    ]:
        B = extend_border(A, side, sign)
        assert undo(B) == A
        assert verify_full(B, 4).pattern == SignPattern.from_string(full)


def test_extend_border_square_never_grows():
    A = built(3, 3, "-+-")
    for side in ("left", "right", "top", "bottom"):
        B = extend_border(A, side)
        assert verify_full(B, 3).pattern == (-1, 1, -1)
        with pytest.raises(ContractViolation):
            extend_border(A, side, 1)


def test_extend_border_sign_required_when_growing():
    A = built(4, 3, "+++")
    with pytest.raises(SsrError):
        extend_border(A, "left")
    with pytest.raises(SsrError):
        extend_border(A, "right", 2)
    B = extend_border(A, "right", -1)
    assert verify_full(B, 4).pattern == (1, 1, 1, -1)


def test_extend_border_rejects_non_ssr_input():
    with pytest.raises(ContractViolation):
        extend_border(COUNTEREXAMPLE, "left")
    with pytest.raises(SsrError):
        extend_border(built(2, 2, "++"), "diagonal")


def test_extend_border_trace_records_new_sizes():
    A = built(4, 3, "+-+")
    tr = ConstructionTrace()
    extend_border(A, "left", -1, trace=tr)
    assert tr.pattern_extensions == [-1 * 1]  # flip of eps_3 = +1


# --- ssr_construction ------------------------------------------------------


def test_seeds_are_exact():
    assert grid(ssr_construction(2, 2, "++")[0]) == [[2, 1], [1, 1]]
    assert grid(ssr_construction(2, 2, "+-")[0]) == [[1, 1], [2, 1]]
    assert grid(ssr_construction(2, 2, "-+")[0]) == [[-2, -1], [-1, -1]]
    assert grid(ssr_construction(2, 2, "--")[0]) == [[-1, -1], [-2, -1]]


def test_min_dimension_one():
    assert grid(ssr_construction(1, 3, "+")[0]) == [[1, 1, 1]]
    assert grid(ssr_construction(3, 1, "-")[0]) == [[-1], [-1], [-1]]
    assert grid(ssr_construction(1, 1, "-")[0]) == [[-1]]


def test_construction_verifies_small_shapes():
    for m in range(1, 5):
        for n in range(1, 5):
            for signs in sign_patterns(min(m, n)):
                A, trace = ssr_construction(m, n, signs)
                assert A.shape == (m, n)
                report = verify_full(A, min(m, n))
                assert report.accepted, (m, n, signs, report.witness)
                assert report.pattern == SignPattern.from_string(signs)
                assert not trace.trusted_input


def test_construction_is_deterministic():
    a1, _ = ssr_construction(4, 5, "-+-+")
    a2, _ = ssr_construction(4, 5, "-+-+")
    assert a1 == a2


def test_construction_trace_contents():
    _, tr = ssr_construction(4, 4, "+--+")
    # New sizes 3 and 4 were created by perturbation, in order.
    assert tr.pattern_extensions == [-1, 1]
    assert len(tr.perturbations) == 2
    assert all(
        all(c > 0 for c in coeffs) for coeffs in tr.column_coefficients
    )


def test_pattern_length_error_message():
    with pytest.raises(PatternLengthError) as err:
        ssr_construction(3, 4, "+-")
    assert str(err.value) == "The length of the sign pattern is not correct!"
    with pytest.raises(PatternLengthError):
        ssr_construction(2, 2, "+-+")
    with pytest.raises(PatternLengthError):
        ssr_p_construction(4, 4, 2, "+-+")


def test_construction_dimension_errors():
    with pytest.raises(SsrError):
        ssr_construction(0, 3, "+")
    with pytest.raises(SsrError):
        ssr_construction(3, -1, "+")
    with pytest.raises(SsrError):
        ssr_construction(2, 2, "+0")


# --- ssr_p_construction ----------------------------------------------------


def test_ssr_p_order_one_is_constant_sign():
    A, _ = ssr_p_construction(5, 4, 1, "-")
    assert A.shape == (5, 4)
    assert all(x == -1 for row in A for x in row)
    assert verify_full(A, 1).pattern == (-1,)
    # Every 2x2 minor vanishes.
    assert all(
        A.minor([i, i + 1], [j, j + 1]) == 0
        for i in range(1, 5)
        for j in range(1, 4)
    )


def test_ssr_p_general_orders():
    for (m, n, p) in [(4, 4, 2), (5, 4, 3), (4, 6, 2), (6, 5, 1)]:
        for signs in sign_patterns(p):
            A, _ = ssr_p_construction(m, n, p, signs)
            assert A.shape == (m, n)
            report = verify_full(A, p)
            assert report.accepted, (m, n, p, signs)
            assert report.pattern == SignPattern.from_string(signs)
            # One size further up, every contiguous minor is zero.
            for I in contiguous_sets(m, p + 1):
                for J in contiguous_sets(n, p + 1):
                    assert A.minor(I.indices, J.indices) == 0


def test_ssr_p_requires_p_below_min():
    with pytest.raises(SsrError):
        ssr_p_construction(4, 4, 4, "+-+-")
    with pytest.raises(SsrError):
        ssr_p_construction(3, 5, 3, "+++")
    with pytest.raises(SsrError):
        ssr_p_construction(3, 5, 0, "")


# --- extend_border_ssr_p ---------------------------------------------------


def test_extend_border_ssr_p_preserves_order():
    A, _ = ssr_p_construction(4, 5, 2, "+-")
    undo = {
        "left": lambda B: B.delete_col(1),
        "right": lambda B: B.delete_col(6),
        "top": lambda B: B.delete_row(1),
        "bottom": lambda B: B.delete_row(5),
    }
    for side in ("left", "right", "top", "bottom"):
        B = extend_border_ssr_p(A, 2, side)
        assert verify_full(B, 2).pattern == (1, -1)
        assert undo[side](B) == A


def test_extend_border_ssr_p_full_order_matches_add_col_left():
    A = built(3, 4, "++-")
    assert extend_border_ssr_p(A, 3, "left") == add_col_left(A)


def test_extend_border_ssr_p_errors():
    A, _ = ssr_p_construction(4, 4, 2, "++")
    with pytest.raises(SsrError):
        extend_border_ssr_p(A, 5, "left")
    with pytest.raises(ContractViolation):
        extend_border_ssr_p(COUNTEREXAMPLE, 2, "left")


# --- oversize inputs are trusted, not verified -----------------------------


def test_trusted_input_flag_above_oracle_limit():
    big = Mat([[1] * (ORACLE_LIMIT + 2) for _ in range(ORACLE_LIMIT + 1)])
    tr = ConstructionTrace()
    B = extend_border_ssr_p(big, 1, "left", trace=tr)
    assert tr.trusted_input
    assert B.shape == (ORACLE_LIMIT + 1, ORACLE_LIMIT + 3)
    assert all(x == 1 for row in B for x in row)
