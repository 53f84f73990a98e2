"""
Command-line front end: validation and the five operators over `.hn` files.

Output is always canonical text, so repeated runs are byte-identical.
Progress and warnings go to stderr through src.logger.
"""
import argparse
import sys
from enum import IntEnum
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from src.algebra import PruneSelector, SplitCriterion, difference, meet, merge, prune, split
from src.axioms import ValidationReport, is_sub_hypernetwork
from src.core import Hypernetwork
from src.errors import ClosureViolation, OperatorError, ParseError
from src.logger import debug, init_logging, log, stop_logging
from src.notation import canonical, load_text
from src.testkit import GenConfig, dump_corpus
from src.utils.config import get_corpus_settings, get_log_settings, print_current_config

STDIO = "-"


class ExitStatus(IntEnum):
    OK = 0
    VIOLATIONS = 1
    PARSE_ERROR = 2
    USAGE = 3
    OPERATOR_ERROR = 4


class UsageError(Exception):
    """Bad invocation detected after argument parsing."""


class _ArgumentParser(argparse.ArgumentParser):
    """Exits with USAGE on bad arguments."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ExitStatus.USAGE, f"{self.prog}: error: {message}\n")


class InvalidInput(Exception):
    def __init__(self, path: str, report: ValidationReport):
        super().__init__(f"{path} has {len(report.violations)} violation(s)")
        self.path = path
        self.report = report


# ===== I/O =====

def read_text(path: str) -> str:
    if path == STDIO:
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from None


def write_text(path: str, text: str) -> None:
    if path == STDIO:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(path).write_text(text, encoding="utf-8")
    debug(f"✅ Wrote {path}")


def load(path: str) -> Tuple[Hypernetwork, ValidationReport]:
    """Parse and build one file. ParseError carries the file name."""
    debug(f"-> Loading {path}")
    text = read_text(path)
    try:
        return load_text(text)
    except ParseError as err:
        err.args = (f"{path}: {err}",)
        raise


def load_valid(path: str) -> Hypernetwork:
    h, report = load(path)
    if not report.ok:
        raise InvalidInput(path, report)
    return h


# ===== COMMANDS =====

def cmd_validate(args) -> int:
    _, report = load(args.file)
    for line in report.lines():
        print(line)
    return ExitStatus.OK if report.ok else ExitStatus.VIOLATIONS


BINARY_OPERATORS: Dict[str, Callable[[Hypernetwork, Hypernetwork], Hypernetwork]] = {
    "merge": merge,
    "meet": meet,
    "diff": difference,
}


def cmd_binop(args) -> int:
    left, right = load_valid(args.left), load_valid(args.right)
    result = BINARY_OPERATORS[args.command](left, right)
    write_text(args.output, canonical(result))
    return ExitStatus.OK


def cmd_prune(args) -> int:
    try:
        selector = PruneSelector.from_items(args.drop or [])
    except ValueError as err:
        raise UsageError(str(err)) from None
    h = load_valid(args.file)
    write_text(args.output, canonical(prune(h, selector)))
    return ExitStatus.OK


def cmd_split(args) -> int:
    if args.all:
        criterion = SplitCriterion.everything()
    elif args.boundary:
        criterion = SplitCriterion.by_boundary(args.boundary)
    else:
        criterion = SplitCriterion.by_seeds(args.seed)
    h = load_valid(args.file)
    write_text(args.output, canonical(split(h, criterion)))
    return ExitStatus.OK


def cmd_subhn(args) -> int:
    small, big = load_valid(args.small), load_valid(args.big)
    print("true" if is_sub_hypernetwork(small, big) else "false")
    return ExitStatus.OK


def cmd_canon(args) -> int:
    h, report = load(args.file)
    for line in report.lines():
        log(line)
    write_text(args.output, canonical(h))
    return ExitStatus.OK if report.ok else ExitStatus.VIOLATIONS


def cmd_corpus(args) -> int:
    directory = args.out or _corpus_default("directory", "corpus")
    count = args.count if args.count is not None else _corpus_default("count", 20)
    if count < 0:
        raise UsageError("--count must not be negative")
    for path in dump_corpus(directory, count, args.start, GenConfig.from_config()):
        print(path)
    return ExitStatus.OK


def _corpus_default(key: str, fallback):
    try:
        return get_corpus_settings().get(key, fallback)
    except FileNotFoundError:
        return fallback


def cmd_config(args) -> int:
    try:
        print_current_config()
    except FileNotFoundError as err:
        raise UsageError(str(err)) from None
    return ExitStatus.OK


# ===== PARSER =====

def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="hnkit", description="Hypernetwork kernel: validate and compose .hn models.")
    parser.add_argument("--verbose", action="store_true", help="print operator steps to stderr")
    parser.add_argument("--log-dir", help="also write a session log file into this directory")
    commands = parser.add_subparsers(dest="command", required=True)

    def with_output(sub):
        sub.add_argument("-o", "--output", default=STDIO, help="output file ('-' for stdout)")
        return sub

    sub = commands.add_parser("validate", help="report axiom violations")
    sub.add_argument("file")
    sub.set_defaults(handler=cmd_validate)

    for name, text in (("merge", "left ⊔ right"), ("meet", "left ⊓ right"), ("diff", "left / right")):
        sub = with_output(commands.add_parser(name, help=text))
        sub.add_argument("left")
        sub.add_argument("right")
        sub.set_defaults(handler=cmd_binop)

    sub = with_output(commands.add_parser("prune", help="prune selected structure"))
    sub.add_argument("file")
    sub.add_argument("--drop", action="append", metavar="ITEM",
                     help="v:<id>, hs:<id>, rel:<symbol> or b:<id>; repeatable")
    sub.set_defaults(handler=cmd_prune)

    sub = with_output(commands.add_parser("split", help="project by boundary or seeds"))
    sub.add_argument("file")
    scope = sub.add_mutually_exclusive_group(required=True)
    scope.add_argument("--boundary", metavar="ID")
    scope.add_argument("--seed", action="append", metavar="VERTEX")
    scope.add_argument("--all", action="store_true")
    sub.set_defaults(handler=cmd_split)

    sub = commands.add_parser("subhn", help="print true if SMALL is a sub-hypernetwork of BIG")
    sub.add_argument("small")
    sub.add_argument("big")
    sub.set_defaults(handler=cmd_subhn)

    sub = with_output(commands.add_parser("canon", help="rewrite a file in canonical form"))
    sub.add_argument("file")
    sub.set_defaults(handler=cmd_canon)

    sub = commands.add_parser("corpus", help="dump seeded generated models")
    sub.add_argument("--count", type=int)
    sub.add_argument("--start", "--start-seed", dest="start", type=int, default=0)
    sub.add_argument("--out", metavar="DIR")
    sub.set_defaults(handler=cmd_corpus)

    sub = commands.add_parser("config", help="print the active configuration")
    sub.set_defaults(handler=cmd_config)
    return parser


def _logging_options(args) -> Tuple[Optional[str], bool]:
    try:
        settings = get_log_settings()
    except FileNotFoundError:
        settings = {}
    log_dir = args.log_dir or (settings.get("log_dir") if settings.get("log_to_file") else None)
    return log_dir, bool(args.verbose or settings.get("verbose"))


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return int(stop.code or 0)

    log_dir, verbose = _logging_options(args)
    init_logging(session_name=args.command, log_dir=log_dir, verbose=verbose)
    try:
        return int(args.handler(args))
    except UsageError as err:
        log(f"❌ {err}")
        return ExitStatus.USAGE
    except ParseError as err:
        log(f"❌ parse error: {err}")
        return ExitStatus.PARSE_ERROR
    except InvalidInput as err:
        log(f"❌ {err}")
        for line in err.report.lines():
            log(line)
        return ExitStatus.VIOLATIONS
    except OperatorError as err:
        log(f"❌ {err}")
        return ExitStatus.OPERATOR_ERROR
    except ClosureViolation as err:
        log(f"❌ INTERNAL DEFECT: {err}")
        return ExitStatus.VIOLATIONS
    finally:
        stop_logging()
