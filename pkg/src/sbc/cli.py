"""Command-line front end.

Subcommands: analyze, apply, preimages, reduce, compose, check, derive,
search.  Exit codes: 0 on success or when a checked property holds, 1 when
a checked property fails or inference reports a negative verdict, 2 on
usage or format errors.  Output is plain text and byte-for-byte
deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import (
    Alphabet,
    compose,
    parse_block_map,
    reduce_to_minimal,
    serialize_block_map,
    slide,
)
from .derive import derive_block_map, parse_samples
from .errors import (
    DeriveError,
    ParseError,
    SearchError,
    ToolkitError,
)
from .properties import (
    PropertyReport,
    analyze,
    cylinder_injectivity,
    is_progressive,
    is_regressive,
    is_weakly_progressive,
    preimage_prefixes,
)
from .search import SearchConstraints, enumerate_block_maps

__all__ = ["main", "build_parser", "render_report"]


class _CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code
        self.message = message


def _load_block_map(path_str):
    path = Path(path_str)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(2, f"error: {path}: {exc.strerror or exc}") from None
    try:
        return parse_block_map(text)
    except ParseError as exc:
        where = f"{path}:{exc.line}" if exc.line is not None else str(path)
        raise _CliError(2, f"error: {where}: {exc}") from None


def _load_samples(path_str, alphabet):
    path = Path(path_str)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(2, f"error: {path}: {exc.strerror or exc}") from None
    try:
        return parse_samples(text, alphabet)
    except ParseError as exc:
        where = f"{path}:{exc.line}" if exc.line is not None else str(path)
        raise _CliError(2, f"error: {where}: {exc}") from None


def _parse_word(alphabet, text):
    try:
        return alphabet.word(text)
    except ValueError as exc:
        raise _CliError(2, f"error: {exc}") from None


def render_report(report: PropertyReport) -> str:
    """One `key: value` line per report field, witnesses in parentheses."""
    alphabet = report.minimal_map.alphabet
    lines = [f"minimal_window: {report.minimal_window}"]
    for key, holds, witness in (
        ("progressive", report.progressive, report.progressive_witness),
        ("regressive", report.regressive, report.regressive_witness),
    ):
        if holds:
            lines.append(f"{key}: true")
        else:
            lines.append(f"{key}: false ({witness.describe(alphabet)})")
    if report.weak_order is not None:
        lines.append(f"weak_order: {report.weak_order}")
    else:
        lines.append(
            f"weak_order: none (searched m <= {report.weak_order_bound})"
        )
    lines.append(f"star_commutes: {'true' if report.star_commutes else 'false'}")
    verdict = report.local_homeo
    if verdict.status == "proven":
        lines.append(f"local_homeo: ProvenLH({verdict.weak_order})")
    elif verdict.status == "refuted":
        lines.append(
            f"local_homeo: ProvenNotLH ({verdict.witness.describe(alphabet)})"
        )
    else:
        lines.append(
            f"local_homeo: Unknown (searched m <= {verdict.searched_bound})"
        )
    if report.covering_per_symbol is None:
        lines.append("covering_degree: none (no weakly progressive witness)")
    else:
        per = " ".join(
            f"{alphabet.name(s)}={c}"
            for s, c in enumerate(report.covering_per_symbol)
        )
        value = report.covering_degree
        head = str(value) if value is not None else "none"
        lines.append(f"covering_degree: {head} (per symbol: {per})")
    return "\n".join(lines)


def _cmd_analyze(args):
    d = _load_block_map(args.file)
    report = analyze(
        d, max_weak_order=args.max_weak_order, oracle_depth=args.oracle_depth
    )
    print(render_report(report))
    return 0


def _cmd_apply(args):
    d = _load_block_map(args.file)
    word = _parse_word(d.alphabet, args.word)
    print(slide(d, word))
    return 0


def _cmd_preimages(args):
    d = _load_block_map(args.file)
    target = _parse_word(d.alphabet, args.word)
    words = preimage_prefixes(d, target)
    if args.limit is not None:
        words = words[: args.limit]
    for w in words:
        print(w)
    return 0


def _cmd_reduce(args):
    d = _load_block_map(args.file)
    reduced, _ = reduce_to_minimal(d)
    text = serialize_block_map(reduced)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_compose(args):
    inner = _load_block_map(args.inner)
    outer = _load_block_map(args.outer)
    composed = compose(outer, inner)
    Path(args.output).write_text(serialize_block_map(composed), encoding="utf-8")
    return 0


def _cmd_check(args):
    d = _load_block_map(args.file)
    alphabet = d.alphabet
    if args.progressive:
        key, result = "progressive", is_progressive(d)
    elif args.regressive:
        key, result = "regressive", is_regressive(d)
    elif args.weak_order is not None:
        key = f"weakly_progressive({args.weak_order})"
        result = is_weakly_progressive(d, args.weak_order)
    elif args.star_commutes:
        # the verdict equals regressivity; reuse its witness on failure
        key, result = "star_commutes", is_regressive(d)
    else:
        key, result = "injective", cylinder_injectivity(d)
    if result.holds:
        print(f"{key}: true")
        return 0
    print(f"{key}: false ({result.witness.describe(alphabet)})")
    return 1


def _cmd_derive(args):
    alphabet = Alphabet(args.alphabet) if args.alphabet else None
    corpus = _load_samples(args.samples, alphabet)
    d, window = derive_block_map(corpus, max_window=args.max_window)
    Path(args.output).write_text(serialize_block_map(d), encoding="utf-8")
    print(f"window: {window}")
    return 0


def _tri(value):
    if value is None:
        return None
    return value == "yes"


def _cmd_search(args):
    constraints = SearchConstraints(
        alphabet_size=args.alphabet,
        window=args.window,
        progressive=_tri(args.progressive),
        regressive=_tri(args.regressive),
        weak_order=args.weak_order,
        covering=args.covering,
        limit=args.limit,
        count_only=args.count_only,
        modulo_relabeling=args.modulo_relabeling,
        force=args.force,
    )
    result = enumerate_block_maps(constraints)
    if args.count_only:
        print(f"count: {result.count}")
    else:
        sys.stdout.write("---\n".join(serialize_block_map(d) for d in result.tables))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sbc",
        description="Analyze block maps and their sliding block codes on "
        "one-sided full shifts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="full property report")
    p_analyze.add_argument("file")
    p_analyze.add_argument("--max-weak-order", type=int, default=6)
    p_analyze.add_argument(
        "--oracle-depth",
        type=int,
        default=None,
        help="finite *-commuting cross-check depth (default: window + 3)",
    )
    p_analyze.set_defaults(func=_cmd_analyze)

    p_apply = sub.add_parser("apply", help="slide the rule along a word")
    p_apply.add_argument("file")
    p_apply.add_argument("word")
    p_apply.set_defaults(func=_cmd_apply)

    p_pre = sub.add_parser("preimages", help="preimage words of an output word")
    p_pre.add_argument("file")
    p_pre.add_argument("word")
    p_pre.add_argument("--limit", type=int, default=None)
    p_pre.set_defaults(func=_cmd_preimages)

    p_reduce = sub.add_parser("reduce", help="minimize the window")
    p_reduce.add_argument("file")
    p_reduce.add_argument("-o", "--output", default=None)
    p_reduce.set_defaults(func=_cmd_reduce)

    p_compose = sub.add_parser(
        "compose", help="compose two rule tables (INNER applied first)"
    )
    p_compose.add_argument("inner")
    p_compose.add_argument("outer")
    p_compose.add_argument("-o", "--output", required=True)
    p_compose.set_defaults(func=_cmd_compose)

    p_check = sub.add_parser("check", help="check one property; exit 1 if it fails")
    p_check.add_argument("file")
    group = p_check.add_mutually_exclusive_group(required=True)
    group.add_argument("--progressive", action="store_true")
    group.add_argument("--regressive", action="store_true")
    group.add_argument("--weak-order", type=int, default=None, metavar="M")
    group.add_argument("--star-commutes", action="store_true")
    group.add_argument("--injective", action="store_true")
    p_check.set_defaults(func=_cmd_check)

    p_derive = sub.add_parser("derive", help="infer a rule table from samples")
    p_derive.add_argument("samples")
    p_derive.add_argument("-o", "--output", required=True)
    p_derive.add_argument("--max-window", type=int, default=8)
    p_derive.add_argument(
        "--alphabet",
        type=int,
        default=None,
        help="alphabet size (default: inferred from the samples)",
    )
    p_derive.set_defaults(func=_cmd_derive)

    p_search = sub.add_parser("search", help="enumerate tables by properties")
    p_search.add_argument("--alphabet", type=int, required=True, metavar="K")
    p_search.add_argument("--window", type=int, required=True, metavar="N")
    p_search.add_argument("--progressive", choices=("yes", "no"), default=None)
    p_search.add_argument("--regressive", choices=("yes", "no"), default=None)
    p_search.add_argument("--weak-order", type=int, default=None, metavar="M")
    p_search.add_argument("--covering", type=int, default=None, metavar="C")
    p_search.add_argument("--limit", type=int, default=None, metavar="L")
    p_search.add_argument("--count-only", action="store_true")
    p_search.add_argument("--modulo-relabeling", action="store_true")
    p_search.add_argument("--force", action="store_true")
    p_search.set_defaults(func=_cmd_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except _CliError as exc:
        print(exc.message, file=sys.stderr)
        return exc.code
    except DeriveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ToolkitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
