"""``rulekit`` command line.

Exit status: 0 on success, 1 on usage errors, 2 on data errors (unreadable
input, parse failures, undefined measures).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .errors import DataError, ParseError, RulekitError
from .measures import MEASURES, DEFAULT_MEASURES
from .mine import MiningConfig, apriori, pair_counts
from .oracle import parse_synth_spec, synth_db
from .report import (
    ReportConfig,
    render_graph,
    render_hubs,
    render_itemset_table,
    render_measure_table,
    render_report,
)
from .rulegraph import Thresholds, build_relation_graph, generate_rules, recommend_hubs
from .txdb import (
    format_survey_csv,
    format_transactions,
    parse_survey_csv,
    parse_transactions,
    survey_fixture,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _unit_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1]: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {text!r}")
    return value


def _measure_list(text: str) -> tuple[str, ...]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    if not names:
        raise argparse.ArgumentTypeError("empty measure list")
    for name in names:
        if name not in MEASURES:
            raise argparse.ArgumentTypeError(
                f"unknown measure {name!r} (choose from {', '.join(MEASURES)})"
            )
    return tuple(dict.fromkeys(names))


def _int64(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rulekit", description="Association rules over transaction data.")
    parser.add_argument("--version", action="version", version=f"rulekit {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def data_command(name, help_text, formats=None):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--input", default="-", metavar="PATH",
                       help="transaction file, or - for standard input (default)")
        p.add_argument("--survey", action="store_true",
                       help="read respondent_id,answer1,answer2 survey CSV instead")
        if formats:
            p.add_argument("--format", choices=formats, default=formats[0])
        return p

    def thresholds(p):
        p.add_argument("--min-support", type=_unit_fraction, default=Fraction(0), metavar="FLOAT")
        p.add_argument("--min-conf", type=_unit_fraction, default=Fraction(0), metavar="FLOAT")

    def decimals(p):
        p.add_argument("--decimals", type=_positive_int, default=4, metavar="INT")

    data_command("validate", "Check that the input parses and summarise it.")

    p = data_command("mine", "Frequent itemsets (Apriori).", ["markdown", "csv", "json"])
    p.add_argument("--min-support", type=_unit_fraction, default=Fraction(0), metavar="FLOAT")
    p.add_argument("--max-size", type=_positive_int, default=None, metavar="INT")
    decimals(p)

    p = data_command("rules", "Scored pair rules.", ["markdown", "csv", "json"])
    thresholds(p)
    p.add_argument("--measures", type=_measure_list, default=DEFAULT_MEASURES, metavar="LIST",
                   help=f"comma-separated subset of {','.join(MEASURES)}")
    decimals(p)

    p = data_command("graph", "Relation graph of surviving rules.", ["markdown", "csv", "dot", "json"])
    thresholds(p)
    decimals(p)

    p = data_command("recommend", "Rank items by relation-graph degree.", ["markdown", "csv", "json"])
    thresholds(p)
    p.add_argument("--top", type=_positive_int, default=2, metavar="INT")

    p = data_command("report", "Full Markdown analysis.", ["markdown"])
    thresholds(p)
    p.add_argument("--top", type=_positive_int, default=2, metavar="INT")
    p.add_argument("--threshold", type=_unit_fraction, default=Fraction(1, 2), metavar="FLOAT",
                   help="cosine at or above which a relation counts as strong")
    p.add_argument("--errata", action="store_true",
                   help="list reference-table discrepancies for the survey fixture")
    decimals(p)

    p = sub.add_parser("fixture", help="Print the 350-form advertisement survey.",
                       description="Print the 350-form advertisement survey.")
    p.add_argument("--survey", action="store_true", help="emit survey CSV instead")

    p = sub.add_parser("synth", help="Generate a synthetic database from a spec file.",
                       description="Generate a synthetic database from a spec file.")
    p.add_argument("--spec", required=True, metavar="PATH")
    p.add_argument("--seed", type=_int64, default=None, metavar="INT",
                   help="override the spec's seed")
    return parser


def _read(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(args, stdin):
    text = _read(args.input, stdin)
    return (parse_survey_csv if args.survey else parse_transactions)(text)


def _rules(db, args, which=DEFAULT_MEASURES):
    t = Thresholds(args.min_support, args.min_conf)
    return generate_rules(db, pair_counts(db), t, which)


def _execute(args, stdin) -> str:
    cmd = args.command
    if cmd == "fixture":
        db = survey_fixture()
        return format_survey_csv(db) if args.survey else format_transactions(db)
    if cmd == "synth":
        spec = parse_synth_spec(_read(args.spec, stdin))
        if args.seed is not None:
            spec = type(spec)(args.seed, spec.universe, spec.pair_weights, spec.extra_singletons)
        return format_transactions(synth_db(spec))

    db = _load(args, stdin)
    if cmd == "validate":
        sizes = sorted({len(tx) for tx in db.transactions})
        return (f"ok: {db.n_total} transactions, {len(db.universe)} items, "
                f"transaction sizes {sizes}\n")

    cfg = ReportConfig(format=args.format, decimals=getattr(args, "decimals", 4),
                       include_errata_notes=getattr(args, "errata", False))
    if cmd == "mine":
        itemsets = apriori(db, MiningConfig(args.min_support, args.max_size))
        return render_itemset_table(itemsets, cfg)
    if cmd == "rules":
        return render_measure_table(_rules(db, args, args.measures), cfg, columns=args.measures)
    if cmd == "graph":
        return render_graph(build_relation_graph(_rules(db, args)), cfg)
    if cmd == "recommend":
        graph = build_relation_graph(_rules(db, args))
        return render_hubs(recommend_hubs(graph, db, args.top), cfg)
    if cmd == "report":
        return render_report(db, cfg, Thresholds(args.min_support, args.min_conf),
                             args.threshold, args.top)
    raise UsageError(f"unknown command {cmd!r}")


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    """Run one invocation; returns the exit status."""
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return 0 if exc.code in (None, 0) else 1

    source = getattr(args, "spec", None) or getattr(args, "input", "-")
    source = "<stdin>" if source == "-" else source
    try:
        text = _execute(args, stdin)
    except UsageError as exc:
        print(f"rulekit: {exc}", file=stderr)
        return 1
    except OSError as exc:
        print(f"rulekit: cannot read {exc.filename or source}: {exc.strerror or exc}", file=stderr)
        return 2
    except UnicodeDecodeError as exc:
        print(f"rulekit: {source}: not valid UTF-8 ({exc.reason})", file=stderr)
        return 2
    except ParseError as exc:
        where = f"{source}:{exc.line}" if exc.line is not None else source
        print(f"rulekit: {where}: {exc.reason}", file=stderr)
        return 2
    except DataError as exc:
        print(f"rulekit: {source}: {exc}", file=stderr)
        return 2
    except (RulekitError, ValueError) as exc:
        print(f"rulekit: {exc}", file=stderr)
        return 1
    stdout.write(text)
    return 0


def main() -> None:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8", newline="\n")
    if hasattr(sys.stdin, "reconfigure"):
        sys.stdin.reconfigure(encoding="utf-8")
    sys.exit(run(sys.argv[1:]))
