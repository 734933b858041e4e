"""Command line front end: verify, generate, report, suggest.

Exit status: 0 no blocking defects, 1 blocking defects found, 2 input or I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .generator import generate_all, serialize
from .ingestion import Lexicon, ModelFileError, load_models, suggest_aspects
from .reporting import render_csv, render_figure, render_json, render_report, render_table, summarize
from .verifier import VerificationReport, verify

OK, BLOCKING, FAILURE = 0, 1, 2


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return FAILURE


def _verify_file(path) -> VerificationReport:
    models, errors = load_models(path)
    return verify(models, errors)


def _status(report: VerificationReport, strict: bool) -> int:
    if report.parse_errors:
        for e in report.parse_errors:
            print(f"error: {e}", file=sys.stderr)
        return FAILURE
    return BLOCKING if report.blocking(strict) else OK


def cmd_verify(args) -> int:
    try:
        report = _verify_file(args.path)
    except (OSError, ModelFileError) as exc:
        return _fail(f"{args.path}: {exc}")
    if args.json:
        sys.stdout.write(json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(render_report(report))
    return _status(report, args.strict)


def cmd_generate(args) -> int:
    try:
        report = _verify_file(args.path)
    except (OSError, ModelFileError) as exc:
        return _fail(f"{args.path}: {exc}")
    text = serialize(generate_all(report.merged_models))
    if args.output and args.output != "-":
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            return _fail(f"{args.output}: {exc}")
    else:
        sys.stdout.write(text)
    return _status(report, args.strict)


def cmd_report(args) -> int:
    directory = Path(args.dir)
    if not directory.is_dir():
        return _fail(f"{directory}: not a directory")
    reports, generations = [], []
    for path in sorted(directory.glob("*.csv")):
        try:
            report = _verify_file(path)
        except (OSError, ModelFileError) as exc:
            return _fail(f"{path}: {exc}")
        for e in report.parse_errors:
            print(f"warning: {path.name}: {e}", file=sys.stderr)
        reports.append(report)
        generations.extend(generate_all(report.merged_models))
    summary = summarize(reports, generations)
    sys.stdout.write(render_json(summary) if args.json else render_table(summary))
    if args.out_dir:
        out = Path(args.out_dir)
        try:
            out.mkdir(parents=True, exist_ok=True)
            (out / "summary.json").write_text(render_json(summary), encoding="utf-8")
            (out / "summary.csv").write_text(render_csv(summary), encoding="utf-8")
            (out / "summary.txt").write_text(render_table(summary), encoding="utf-8")
            render_figure(summary, out / "defects.png")
        except OSError as exc:
            return _fail(f"{out}: {exc}")
    return OK


def cmd_suggest(args) -> int:
    try:
        lines = Path(args.textfile).read_text(encoding="utf-8").splitlines()
        lexicon = Lexicon.load(args.lexicon) if args.lexicon else None
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    for n, line in enumerate(lines, 1):
        if not line.strip():
            continue
        ranked = suggest_aspects(line, lexicon)
        shown = " ".join(f"{s.aspect.value}={s.score}" for s in ranked) or "-"
        print(f"{n}\t{shown}\t{line.strip()}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perfreq",
        description="Verify performance requirements models and generate performance test environments.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a model CSV for quantification, completeness and conflict defects")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--strict", action="store_true", help="treat warnings as blocking for the exit status")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="generate test environments JSON from a model CSV")
    p.add_argument("path")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.add_argument("--strict", action="store_true", help="treat warnings as blocking for the exit status")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("report", help="summarize defects over a directory of model CSVs")
    p.add_argument("dir")
    p.add_argument("--json", action="store_true", help="print the summary as JSON")
    p.add_argument("--out-dir", help="also write summary.{json,csv,txt} and defects.png here")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("suggest", help="suggest performance aspects for each line of a text file")
    p.add_argument("textfile")
    p.add_argument("--lexicon", help="lexicon file, one 'aspect_id<TAB>term' per line")
    p.set_defaults(func=cmd_suggest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
