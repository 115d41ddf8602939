"""
Command-line interface for percol.

Subcommands: verify, enumerate, classify, glue, construct, diff.

Exit codes:
    0  success or positive result
    1  negative domain result (not perfect, catalogs differ, unclassifiable)
    2  usage or parse error
    3  search budget exceeded
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .codec import (
    ParseError,
    SummaryRow,
    is_summary_file,
    parse_catalog_file,
    parse_coloring_file,
    parse_counts_file,
    parse_matrix_file,
    parse_semicoloring_file,
    serialize_catalog_to_file,
    serialize_coloring_to_file,
    serialize_summary_to_file,
)
from .constructions import (
    Contradiction,
    DomainError,
    MirrorType,
    NotBiInfinite,
    OverlappingSupportsError,
    PsiNotPerfectError,
    conjugate_semicolorings,
    disjunctive_multipath,
    lift_block_monochrome,
    propagate,
    series_cyclic,
    series_mirror,
    series_name,
    three_periodic_complete,
)
from .enumeration import (
    BoundsMismatch,
    BudgetExceeded,
    Catalog,
    ConfigurationError,
    DisjunctiveEvidence,
    SemicoloringEvidence,
    Unclassifiable,
    brute_force_enumerate,
    catalog_diff,
    classify,
    theorem_enumerate,
)
from .equivalence import equivalence_partition, glue
from .finite import PreconditionViolated
from .multipath import (
    BlockProfile,
    ColoringError,
    Family,
    NotPerfect,
    PeriodicColoring,
    check_perfect,
    format_period,
    verify_periodic,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


# ---------------------------------------------------------------------------
# Argument types
# ---------------------------------------------------------------------------


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def profile_arg(text: str) -> BlockProfile:
    """``"2,0,1"`` -> ``(2, 0, 1)``."""
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated counts, got {text!r}"
        ) from None


def period_arg(text: str) -> List[BlockProfile]:
    """``"1,1;2,0;0,2"`` -> three block profiles."""
    return [profile_arg(block) for block in text.split(";")]


def _family(args: argparse.Namespace) -> Family:
    return Family(args.kind, args.n)


def _emit(c: PeriodicColoring, out: Optional[str]) -> None:
    print(format_period(c))
    if out:
        serialize_coloring_to_file(c, out)


def _print_matrix(c: PeriodicColoring) -> None:
    result = check_perfect(c)
    if not isinstance(result, NotPerfect):
        print(result)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    c = parse_coloring_file(args.coloring)
    result = check_perfect(c)
    print(f"{c.family}: {format_period(c)}")
    if isinstance(result, NotPerfect):
        print(f"not perfect: {result}")
        return EXIT_NEGATIVE
    if args.matrix:
        expected = parse_matrix_file(args.matrix)
        if not verify_periodic(c, expected):
            print("perfect, but the parameter matrix differs:")
            print(result)
            return EXIT_NEGATIVE
    print("perfect, parameter matrix:")
    print(result)
    return EXIT_OK


def _print_counts(catalog: Catalog) -> None:
    print(f"{len(catalog)} colorings for {catalog.envelope}")
    counts = catalog.class_counts()
    width = max([len(label) for label in counts] + [5])
    print(f"{'class'.ljust(width)}  count")
    for label, count in sorted(counts.items()):
        print(f"{label.ljust(width)}  {count:5d}")


def cmd_enumerate(args: argparse.Namespace) -> int:
    family = _family(args)
    if args.method == "oracle":
        catalog = brute_force_enumerate(
            family, args.colors, args.max_period, budget=args.budget, jobs=args.jobs
        )
    else:
        catalog = theorem_enumerate(family, args.colors, args.max_period, budget=args.budget)
    if args.out:
        if args.format == "csv":
            serialize_summary_to_file(catalog, args.out)
        else:
            serialize_catalog_to_file(catalog, args.out)
        logger.info("wrote %s (%s)", args.out, args.format)
    _print_counts(catalog)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    c = parse_coloring_file(args.coloring)
    result = classify(c)
    if isinstance(result, Unclassifiable):
        print(f"unclassifiable: {result.reason}")
        return EXIT_NEGATIVE
    print(result.label.value)
    evidence = result.evidence
    if isinstance(evidence, DisjunctiveEvidence):
        name = series_name(evidence.path)
        print(f"path coloring: {format_period(evidence.path)}" + (f" = {name}" if name else ""))
        for color, profile in enumerate(evidence.profiles):
            print(f"  {color} -> {list(profile)}")
    elif isinstance(evidence, SemicoloringEvidence):
        print(f"even: {[list(p) for p in evidence.even.period]}")
        print(f"odd:  {[list(p) for p in evidence.odd.period]}")
    else:
        print(f"blocks: {[list(p) for p in evidence.blocks]}")
    return EXIT_OK


def cmd_glue(args: argparse.Namespace) -> int:
    c = parse_coloring_file(args.coloring)
    classes = equivalence_partition(c)
    print("classes: " + " ".join("{" + ",".join(map(str, m)) + "}" for m in classes))
    glued = glue(c)
    assert isinstance(glued, PeriodicColoring)
    _emit(glued, args.out)
    return EXIT_OK


def _counts(path: str) -> Dict[Tuple[str, int, int, int, str], int]:
    rows: List[SummaryRow] = parse_counts_file(path)
    counts: Dict[Tuple[str, int, int, int, str], int] = {}
    for kind, n, k, p, label, count in rows:
        key = (kind, n, k, p, label)
        counts[key] = counts.get(key, 0) + count
    return counts


def _diff_counts(path_a: str, path_b: str) -> int:
    a, b = _counts(path_a), _counts(path_b)
    differing = [key for key in sorted(set(a) | set(b)) if a.get(key, 0) != b.get(key, 0)]
    logger.debug("compared %d count rows, %d differ", len(set(a) | set(b)), len(differing))
    if not differing:
        print("identical")
        return EXIT_OK
    for key in differing:
        row = ",".join(map(str, key))
        print(f"{row}: {path_a} has {a.get(key, 0)}, {path_b} has {b.get(key, 0)}")
    return EXIT_NEGATIVE


def cmd_diff(args: argparse.Namespace) -> int:
    if args.counts or is_summary_file(args.a) or is_summary_file(args.b):
        return _diff_counts(args.a, args.b)
    a = parse_catalog_file(args.a)
    b = parse_catalog_file(args.b)
    only_a, only_b = catalog_diff(a, b)
    logger.debug("%d colorings only in %s, %d only in %s", len(only_a), args.a, len(only_b), args.b)
    if not only_a and not only_b:
        print("identical")
        return EXIT_OK
    for label, colorings in ((args.a, only_a), (args.b, only_b)):
        for c in colorings:
            print(f"only in {label}: {format_period(c)}")
    return EXIT_NEGATIVE


def _constructed(result: object, out: Optional[str]) -> int:
    if isinstance(result, PeriodicColoring):
        _emit(result, out)
        _print_matrix(result)
        return EXIT_OK
    if isinstance(result, NotPerfect):
        print(f"not perfect: {result}")
    elif isinstance(result, Contradiction):
        print(f"contradiction at block {result.block}: {result.reason}")
    elif isinstance(result, NotBiInfinite):
        print(f"not bi-infinite: cycle of {result.cycle} after {result.prefix} blocks")
    else:
        raise TypeError(f"Unexpected construction result: {type(result).__name__}")
    return EXIT_NEGATIVE


def cmd_construct(args: argparse.Namespace) -> int:
    what = args.construction
    if what == "cyclic":
        result: object = series_cyclic(args.k)
    elif what == "mirror":
        result = series_mirror(args.k, args.type)
    elif what == "lift":
        result = lift_block_monochrome(parse_coloring_file(args.path), _family(args))
    elif what == "disjunctive":
        psi = parse_coloring_file(args.psi)
        result = disjunctive_multipath(psi, args.profile, _family(args))
    elif what == "conjugate":
        even = parse_semicoloring_file(args.even)
        odd = parse_semicoloring_file(args.odd)
        result = conjugate_semicolorings(even, odd)
    elif what == "three-periodic":
        if len(args.blocks) != 3:
            raise ColoringError(f"Expected 3 blocks, got {len(args.blocks)}")
        result = three_periodic_complete(*args.blocks, args.n)
    else:
        matrix = parse_matrix_file(args.matrix)
        result = propagate(matrix, args.b0, args.b1, _family(args))
    return _constructed(result, args.out)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_family(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=["empty", "complete"], default="empty", help="block type")
    p.add_argument("--n", type=positive_int, default=1, help="vertices per block")


def _make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="percol",
        description="Perfect colorings of the multipath graphs C∞·K̄n and C∞·Kn",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more log output")
    p.add_argument("-q", "--quiet", action="store_true", help="errors only")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("verify", help="check that a coloring is perfect")
    s.add_argument("coloring", help="coloring JSON file")
    s.add_argument("--matrix", help="expected parameter matrix JSON file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", help="build a catalog of perfect colorings")
    _add_family(s)
    s.add_argument("--colors", type=positive_int, required=True, help="maximum number of colors")
    s.add_argument("--max-period", type=positive_int, required=True, help="maximum period")
    s.add_argument("--method", choices=["oracle", "theorem"], default="oracle")
    s.add_argument("--out", help="catalog output file")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("--budget", type=positive_int, help="search budget (default: $PERCOL_BUDGET)")
    s.add_argument("--jobs", type=positive_int, default=1, help="worker processes")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("classify", help="name the construction of a perfect coloring")
    s.add_argument("coloring", help="coloring JSON file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("glue", help="identify equivalent colors")
    s.add_argument("coloring", help="coloring JSON file")
    s.add_argument("--out", help="write the glued coloring to this file")
    s.set_defaults(func=cmd_glue)

    s = sub.add_parser("diff", help="compare two catalogs or summaries")
    s.add_argument("a", help="catalog JSON-lines or summary CSV file")
    s.add_argument("b", help="catalog JSON-lines or summary CSV file")
    s.add_argument(
        "--counts",
        action="store_true",
        help="compare per-class counts (implied when either file is a CSV summary)",
    )
    s.set_defaults(func=cmd_diff)

    s = sub.add_parser("construct", help="build a coloring from a construction")
    s.set_defaults(func=cmd_construct)
    kinds = s.add_subparsers(dest="construction", required=True)

    c = kinds.add_parser("cyclic", help="S(k)")
    c.add_argument("--k", type=positive_int, required=True)

    c = kinds.add_parser("mirror", help="S11(k), S12(k) or S22(k)")
    c.add_argument("--k", type=positive_int, required=True)
    c.add_argument("--type", choices=[m.value for m in MirrorType], required=True)

    c = kinds.add_parser("lift", help="copy a coloring of C∞ into whole blocks")
    c.add_argument("path", help="coloring JSON file of C∞")
    _add_family(c)

    c = kinds.add_parser("disjunctive", help="one block profile per path color")
    c.add_argument("psi", help="coloring JSON file of C∞")
    c.add_argument(
        "--profile",
        type=profile_arg,
        action="append",
        required=True,
        help="profile for the next path color, e.g. 1,1,0 (repeatable)",
    )
    _add_family(c)

    c = kinds.add_parser("conjugate", help="interleave two semicolorings")
    c.add_argument("even", help="even semicoloring JSON file")
    c.add_argument("odd", help="odd semicoloring JSON file")

    c = kinds.add_parser("three-periodic", help="3-block period of C∞·Kn")
    c.add_argument("--n", type=positive_int, required=True)
    c.add_argument("--blocks", type=period_arg, required=True, help="e.g. 1,1;2,0;0,2")

    c = kinds.add_parser("propagate", help="restore a coloring from two blocks")
    c.add_argument("--matrix", required=True, help="parameter matrix JSON file")
    c.add_argument("--b0", type=profile_arg, required=True)
    c.add_argument("--b1", type=profile_arg, required=True)
    _add_family(c)

    for parser in kinds.choices.values():
        parser.add_argument("--out", help="write the coloring to this file")
    return p


def _configure_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.ERROR
    else:
        level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


_EXIT_CODES: Dict[type, int] = {
    BudgetExceeded: EXIT_BUDGET,
    ParseError: EXIT_USAGE,
    BoundsMismatch: EXIT_USAGE,
    ConfigurationError: EXIT_USAGE,
    OverlappingSupportsError: EXIT_NEGATIVE,
    PsiNotPerfectError: EXIT_NEGATIVE,
    PreconditionViolated: EXIT_NEGATIVE,
    DomainError: EXIT_USAGE,
    ColoringError: EXIT_USAGE,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    _configure_logging(args.verbose, args.quiet)
    handler: Callable[[argparse.Namespace], int] = args.func
    try:
        return handler(args)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except tuple(_EXIT_CODES) as e:
        print(f"error: {e}", file=sys.stderr)
        return next(code for kind, code in _EXIT_CODES.items() if isinstance(e, kind))


if __name__ == "__main__":
    sys.exit(main())
