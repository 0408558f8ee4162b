"""``gdc``: check proof files, evaluate terms, classify constants, run the corpus.

Exit status: 0 when everything passes, 1 on a logical failure (a proof
rejected unexpectedly, a manifest mismatch), 2 on usage, IO or syntax
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import corpus
from .defenv import DefEnv, DefinitionError, add_def
from .evaluator import EvalConfig, NotConstant, OpenTerm, classify, evaluate
from .kernel import CheckConfig, DefItem, Discipline, FileReport, ItemResult, check_file
from .parser import GdSyntaxError, parse_file, parse_term

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must not be negative")
    return n


def _positive(text: str) -> int:
    n = _nonneg(text)
    if n == 0:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=_nonneg, default=100_000, help="unfolding budget for evaluation (default 100000)")
    common.add_argument("--quant-bound", type=_nonneg, default=64,
                        help="largest number tried by quantifier search (default 64)")
    common.add_argument("--discipline", choices=[d.value for d in Discipline], default="at",
                        help="typing discipline: agnostic, coded or disjoint types (default at)")
    common.add_argument("--format", choices=("text", "json"), default="text", help="output format (default text)")
    common.add_argument("--verbose", "-v", action="store_true", help="print error details and bounds")
    common.add_argument("--jobs", "-j", type=_positive, default=1, help="files checked in parallel (default 1)")

    ap = argparse.ArgumentParser(prog="gdc", description="Grounded deduction proof checker and evaluator.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("check", parents=[common], help="check the proofs in .gd files")
    p.add_argument("files", nargs="+", type=Path, metavar="FILE")
    p.add_argument("--manifest", type=Path,
                   help="manifest of expected outcomes (default: manifest.txt beside each file, if any)")
    p.add_argument("--raw", action="store_true", help="ignore manifests; every rejection is a failure")

    p = sub.add_parser("eval", parents=[common], help="evaluate a closed term")
    p.add_argument("-e", "--expr", required=True, metavar="TERM", help="the term; '-' reads it from stdin")
    p.add_argument("files", nargs="*", type=Path, metavar="FILE", help="files supplying definitions")

    p = sub.add_parser("classify", parents=[common], help="classify a defined constant as grounded or not")
    p.add_argument("symbol")
    p.add_argument("files", nargs="+", type=Path, metavar="FILE")

    p = sub.add_parser("corpus", parents=[common], help="run the bundled corpus manifest")
    p.add_argument("--manifest", type=Path, help="manifest to run (default: the corpus manifest)")
    return ap


# ---------------------------------------------------------------------------
# output


class Out:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def record(self, obj: dict, text: str) -> None:
        if self.fmt == "json":
            print(json.dumps(obj, sort_keys=True), file=self.stream)
        else:
            print(text, file=self.stream)

    def note(self, text: str) -> None:
        if self.fmt == "text":
            print(text, file=self.stream)


def _span(span) -> str:
    return f"{span[0]}:{span[1]}" if span else ""


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror or e}") from None


def _definitions(paths: Sequence[Path]) -> DefEnv:
    env = DefEnv()
    for path in paths:
        for item in parse_file(_read(path), str(path)).items:
            if isinstance(item, DefItem):
                try:
                    env = add_def(env, item.definition)
                except DefinitionError as e:
                    raise UsageError(f"{path}: {e}") from None
    return env


def _eval_cfg(args) -> EvalConfig:
    return EvalConfig(fuel=args.fuel, quant_bound=args.quant_bound, discipline=Discipline(args.discipline))


# ---------------------------------------------------------------------------
# check


def _check_one(path: Path, discipline: str) -> FileReport:
    sf = parse_file(_read(path), str(path))
    return check_file(DefEnv(), CheckConfig(Discipline(discipline)), sf.items)


def _expected_rejections(path: Path, manifest: Path | None) -> dict[str, corpus.Entry]:
    if manifest is None:
        beside = path.parent / "manifest.txt"
        if not beside.exists():
            return {}
        manifest = beside
    entries = corpus.parse_manifest(_read(manifest))
    return {e.fields["item"]: e for e in entries if e.expect == "rejects" and e.file == path.name}


def _verdict(r: ItemResult, expected: dict[str, corpus.Entry]) -> tuple[str, bool]:
    if r.kind == "pragma":
        return ("ok" if r.ok else "rejected"), r.ok
    if r.ok:
        if r.name in expected:
            return "proved (expected rejection)", False
        return ("accepted" if r.kind == "def" else "proved"), True
    entry = expected.get(r.name)
    if entry is not None and entry.fields["code"] == r.error_code:
        return "rejected (expected)", True
    return "rejected", False


def cmd_check(args, out: Out) -> int:
    reports: list[FileReport | Exception] = []
    if args.jobs > 1 and len(args.files) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(_check_one, p, args.discipline) for p in args.files]
            for f in futures:
                try:
                    reports.append(f.result())
                except (GdSyntaxError, UsageError) as e:
                    reports.append(e)
    else:
        for p in args.files:
            try:
                reports.append(_check_one(p, args.discipline))
            except (GdSyntaxError, UsageError) as e:
                reports.append(e)

    status = OK
    for path, rep in zip(args.files, reports):
        if isinstance(rep, Exception):
            where = f"{path}:{_span(getattr(rep, 'span', None))}".rstrip(":")
            print(f"{where}: {rep}", file=sys.stderr)
            status = USAGE
            continue
        expected = {} if args.raw else _expected_rejections(path, args.manifest)
        out.note(f"# {path} (discipline={args.discipline})")
        for r in rep.items:
            verdict, good = _verdict(r, expected)
            if not good and status == OK:
                status = FAIL
            obj = {"file": str(path), "name": r.name, "kind": r.kind, "verdict": verdict}
            text = f"{r.name}: {verdict}"
            if r.error is not None:
                obj["error_code"] = r.error_code
                span = r.error_span
                if span:
                    obj["span"] = list(span)
                text += f" [{r.error_code} at {path}:{_span(span)}]"
                if args.verbose:
                    text += f"\n    {r.error}"
            elif args.verbose and r.judgment is not None:
                text += f"\n    {r.judgment}"
            if r.depends:
                obj["depends"] = list(r.depends)
                if args.verbose:
                    text += f"\n    uses {', '.join(r.depends)}"
            out.record(obj, text)
    return status


# ---------------------------------------------------------------------------
# eval and classify


def cmd_eval(args, out: Out) -> int:
    expr = sys.stdin.read() if args.expr == "-" else args.expr
    env = _definitions(args.files)
    t = parse_term(expr.strip())
    cfg = _eval_cfg(args)
    v = evaluate(env, cfg, t)
    obj = {"name": expr.strip(), "kind": "eval", "verdict": str(v), "fuel": cfg.fuel,
           "quant_bound": cfg.quant_bound, "discipline": cfg.discipline.value}
    text = str(v)
    if args.verbose:
        text += f"  (fuel={cfg.fuel}, quant-bound={cfg.quant_bound}, discipline={cfg.discipline.value})"
    out.record(obj, text)
    return OK


def cmd_classify(args, out: Out) -> int:
    env = _definitions(args.files)
    cfg = _eval_cfg(args)
    c = classify(env, cfg, args.symbol)
    obj = {"name": args.symbol, "kind": "classify", "verdict": str(c), "fuel": cfg.fuel,
           "quant_bound": cfg.quant_bound, "discipline": cfg.discipline.value}
    out.record(obj, str(c))
    return OK


# ---------------------------------------------------------------------------
# corpus


def cmd_corpus(args, out: Out) -> int:
    directory = corpus.corpus_dir()
    manifest = args.manifest or directory / "manifest.txt"
    entries = corpus.parse_manifest(_read(manifest))
    report = corpus.run_corpus(entries, directory, jobs=args.jobs)
    for r in report.results:
        verdict = "pass" if r.ok else "FAIL"
        obj = {"name": r.entry.describe(), "kind": r.entry.expect, "verdict": verdict, "line": r.entry.line}
        if not r.ok:
            obj["detail"] = r.detail
        text = f"{verdict}  {r.entry.describe()}"
        if args.verbose or not r.ok:
            text += f"  -- {r.detail}"
        out.record(obj, text)
    passed = sum(r.ok for r in report.results)
    out.note(f"# {passed}/{len(report.results)} entries pass ({directory})")
    return OK if report.ok else FAIL


COMMANDS = {"check": cmd_check, "eval": cmd_eval, "classify": cmd_classify, "corpus": cmd_corpus}


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    out = Out(args.format)
    try:
        return COMMANDS[args.command](args, out)
    except GdSyntaxError as e:
        print(f"syntax error: {e}", file=sys.stderr)
    except (UsageError, corpus.ManifestError, OpenTerm, NotConstant, DefinitionError) as e:
        print(f"gdc: {e}", file=sys.stderr)
    return USAGE


if __name__ == "__main__":
    raise SystemExit(main())
