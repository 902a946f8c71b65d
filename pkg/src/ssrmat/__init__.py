"""Strictly sign regular matrices: exact construction, extension, verification.

A matrix is strictly sign regular (SSR) when for every size k all its k×k
minors are nonzero and share one sign eps_k; SSR_p restricts that to sizes
k <= p.  This package builds such matrices for any size and sign pattern,
grows them by one line at a border or between two consecutive lines, and
verifies the property exactly, all in rational arithmetic with no rounding
anywhere.
"""

from .construct import (
    ConstructionTrace,
    Perturbation,
    Side,
    add_col_left,
    as_pattern,
    column_relation,
    extend_border,
    extend_border_ssr_p,
    extension_grows_min,
    perturb_first_column,
    ssr_construction,
    ssr_p_construction,
)
from .errors import ContractViolation, PatternLengthError, SsrError
from .insert import insert_line, insert_line_ssr_p, insert_middle_even_square
from .matrix import (
    ContiguousSet,
    Mat,
    SignPattern,
    contiguous_sets,
    exchange_matrix,
    transform_sign_pattern,
)
from .numeric import Scalar, det_exact, rat, sign_of
from .verify import SsrReport, Witness, infer_sign_pattern, verify_contiguous, verify_full

__version__ = "0.1.0"

__all__ = [
    "ConstructionTrace",
    "ContiguousSet",
    "ContractViolation",
    "Mat",
    "PatternLengthError",
    "Perturbation",
    "Scalar",
    "Side",
    "SignPattern",
    "SsrError",
    "SsrReport",
    "Witness",
    "add_col_left",
    "as_pattern",
    "column_relation",
    "contiguous_sets",
    "det_exact",
    "exchange_matrix",
    "extend_border",
    "extend_border_ssr_p",
    "extension_grows_min",
    "infer_sign_pattern",
    "insert_line",
    "insert_line_ssr_p",
    "insert_middle_even_square",
    "perturb_first_column",
    "rat",
    "sign_of",
    "ssr_construction",
    "ssr_p_construction",
    "transform_sign_pattern",
    "verify_contiguous",
    "verify_full",
]
