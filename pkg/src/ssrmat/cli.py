"""Command line interface: gen, verify, extend, insert.

Exit codes: 0 on success (and on an accepted verification), 1 when a
verification rejects, 2 on usage errors or broken contracts.  All output is
deterministic: the same invocation produces the same bytes.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import io as docio
from .construct import extend_border, ssr_construction, ssr_p_construction
from .errors import SsrError
from .insert import insert_line, insert_line_ssr_p
from .io import MatrixDocument
from .matrix import Mat
from .verify import verify_contiguous, verify_full

_SIGN_VALUE = {"+": 1, "-": -1}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssrmat",
        description=(
            "Construct, extend, and verify strictly sign regular matrices "
            "in exact rational arithmetic."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="construct a matrix with a given sign pattern")
    gen.add_argument("--rows", type=int, required=True)
    gen.add_argument("--cols", type=int, required=True)
    gen.add_argument(
        "--signs",
        required=True,
        type=_pattern_arg,
        help="sign per minor size, e.g. '+-+' (use the --signs=-+ spelling "
        "when it starts with '-')",
    )
    gen.add_argument(
        "--order",
        type=int,
        default=None,
        help="verified order p; below min(rows, cols) builds an SSR_p matrix",
    )
    gen.add_argument("--trace", action="store_true", help="include the construction trace (JSON only)")
    _output_options(gen)

    ver = sub.add_parser("verify", help="check strict sign regularity")
    ver.add_argument("--input", required=True, help="CSV or JSON matrix file")
    ver.add_argument("--order", type=int, default=None, help="order to check (default min(m,n))")
    ver.add_argument(
        "--oracle",
        action="store_true",
        help="check every minor instead of only contiguous windows",
    )
    ver.add_argument(
        "--max-oracle-dim",
        type=int,
        default=8,
        help="refuse --oracle above this min(m,n) (default 8)",
    )

    ext = sub.add_parser("extend", help="add one line at a border")
    ext.add_argument("--input", required=True)
    ext.add_argument("--side", required=True, choices=["left", "right", "top", "bottom"])
    ext.add_argument(
        "--new-sign",
        choices=["+", "-"],
        default=None,
        help="relative sign for the new minor size, when one appears",
    )
    _output_options(ext)

    ins = sub.add_parser("insert", help="insert a line between two existing ones")
    ins.add_argument("--input", required=True)
    ins.add_argument("--axis", required=True, choices=["row", "col"])
    ins.add_argument("--at", type=int, required=True, help="insert between positions k and k+1")
    ins.add_argument(
        "--order",
        type=int,
        default=None,
        help="preserve only order p (SSR_p insertion)",
    )
    ins.add_argument("--new-sign", choices=["+", "-"], default=None)
    _output_options(ins)

    return parser


def _pattern_arg(text: str) -> str:
    # Counterpart of the run_cli rewrite for the all-minus pattern "--".
    return text[1:] if text.startswith("=") else text


def _output_options(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--format", choices=["csv", "json"], default="csv")
    cmd.add_argument("--out", default=None, help="output file (default stdout)")


def _read_document(path: str) -> MatrixDocument:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return docio.parse_document(handle.read())
    except OSError as exc:
        raise SsrError(f"cannot read {path}: {exc}") from None


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _emit_matrix(
    matrix: Mat,
    args: argparse.Namespace,
    metadata: Optional[dict] = None,
) -> None:
    doc = MatrixDocument(matrix, metadata or {})
    _write(docio.dump_document(doc, args.format), args.out)


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.trace and args.format != "json":
        raise SsrError("--trace needs --format json")
    low = min(args.rows, args.cols)
    if args.order is not None and args.order < low:
        matrix, trace = ssr_p_construction(args.rows, args.cols, args.order, args.signs)
        order = args.order
    else:
        if args.order is not None and args.order > low:
            raise SsrError(f"--order {args.order} exceeds min(rows, cols) = {low}")
        matrix, trace = ssr_construction(args.rows, args.cols, args.signs)
        order = low
    metadata: dict = {"pattern": args.signs, "order": order}
    if args.trace:
        metadata["trace"] = docio.trace_as_metadata(trace)
    _emit_matrix(matrix, args, metadata if args.format == "json" else None)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    doc = _read_document(args.input)
    A = doc.matrix
    low = min(A.rows, A.cols)
    order = args.order if args.order is not None else low
    if args.oracle:
        if low > args.max_oracle_dim:
            raise SsrError(
                f"--oracle refused: min(m,n)={low} exceeds --max-oracle-dim="
                f"{args.max_oracle_dim}"
            )
        report = verify_full(A, order)
    else:
        report = verify_contiguous(A, order)
    if report.accepted:
        sys.stdout.write(f"accepted\norder: {order}\npattern: {report.pattern}\n")
        return 0
    sys.stdout.write(f"rejected\norder: {order}\nwitness: {report.witness}\n")
    return 1


def _cmd_extend(args: argparse.Namespace) -> int:
    doc = _read_document(args.input)
    sign = _SIGN_VALUE[args.new_sign] if args.new_sign is not None else None
    result = extend_border(doc.matrix, args.side, sign)
    _emit_matrix(result, args)
    return 0


def _cmd_insert(args: argparse.Namespace) -> int:
    doc = _read_document(args.input)
    if args.order is not None:
        if args.new_sign is not None:
            raise SsrError("--new-sign does not apply to an order-p insertion")
        result = insert_line_ssr_p(doc.matrix, args.order, args.axis, args.at)
    else:
        sign = _SIGN_VALUE[args.new_sign] if args.new_sign is not None else None
        result = insert_line(doc.matrix, args.axis, args.at, sign)
    _emit_matrix(result, args)
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "verify": _cmd_verify,
    "extend": _cmd_extend,
    "insert": _cmd_insert,
}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    tokens = list(sys.argv[1:] if argv is None else argv)
    # argparse consumes a bare "--" value as the end-of-options marker even
    # in the --signs=-- spelling; reroute that one form around the quirk.
    tokens = ["--signs==--" if t == "--signs=--" else t for t in tokens]
    parser = build_parser()
    args = parser.parse_args(tokens)
    try:
        return _COMMANDS[args.command](args)
    except SsrError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    raise SystemExit(run_cli())


if __name__ == "__main__":
    main()
