"""The bundled corpus and its manifest of expectations.

``manifest.txt`` lists, in order, what each corpus file must do: which
definitions are accepted, which proofs check or fail (and how), and what
the evaluator says about selected terms.  ``run_corpus`` checks every
entry and reports them in manifest order.
"""

from __future__ import annotations

import os
import shlex
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from ..defenv import DefEnv
from ..evaluator import EvalConfig, classify, evaluate
from ..kernel import CheckConfig, Discipline, FileReport, check_file
from ..parser import SourceFile, parse_file, parse_judgment, parse_term

BUNDLED = Path(__file__).parent
FILES = ("paradox.gd", "derived.gd", "bool.gd", "arith.gd", "ack.gd")
EXPECTATIONS = {
    "defines": ("file", "symbol"),
    "proves": ("file", "item"),
    "rejects": ("file", "item", "code"),
    "evaluates": ("file", "term", "value", "fuel"),
    "classifies": ("file", "symbol", "result", "fuel"),
    "derivations": ("min",),
}


class ManifestError(Exception):
    code = "ManifestError"


@dataclass(frozen=True)
class Entry:
    expect: str
    fields: Mapping[str, str]
    line: int

    @property
    def file(self) -> str | None:
        return self.fields.get("file")

    def describe(self) -> str:
        subject = self.fields.get("item") or self.fields.get("symbol") or self.fields.get("term") or ""
        where = f"{self.file}:" if self.file else ""
        return f"{self.expect} {where}{subject}".rstrip(": ")


@dataclass(frozen=True)
class EntryResult:
    entry: Entry
    ok: bool
    detail: str = ""


@dataclass
class CorpusReport:
    results: list[EntryResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list[EntryResult]:
        return [r for r in self.results if not r.ok]


def corpus_dir() -> Path:
    """The corpus directory: ``$GDC_CORPUS_DIR`` if set, else the bundled one."""
    env = os.environ.get("GDC_CORPUS_DIR")
    return Path(env) if env else BUNDLED


def parse_manifest(text: str) -> list[Entry]:
    entries = []
    for n, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields: dict[str, str] = {}
        try:
            words = shlex.split(line)
        except ValueError as e:
            raise ManifestError(f"line {n}: {e}") from None
        for w in words:
            key, sep, value = w.partition("=")
            if not sep:
                raise ManifestError(f"line {n}: expected KEY=VALUE, found {w!r}")
            if key in fields:
                raise ManifestError(f"line {n}: duplicate key {key!r}")
            fields[key] = value
        expect = fields.pop("expect", None)
        if expect not in EXPECTATIONS:
            raise ManifestError(f"line {n}: expect must be one of {', '.join(EXPECTATIONS)}")
        missing = [k for k in EXPECTATIONS[expect] if k not in fields]
        if missing:
            raise ManifestError(f"line {n}: {expect} entry needs {', '.join(missing)}")
        entries.append(Entry(expect, fields, n))
    return entries


def read_manifest(path: Path | None = None) -> list[Entry]:
    path = path or corpus_dir() / "manifest.txt"
    return parse_manifest(Path(path).read_text())


def load(path: Path) -> SourceFile:
    return parse_file(Path(path).read_text(), str(path))


def check_path(path: Path) -> FileReport:
    return check_file(DefEnv(), CheckConfig(), load(path).items)


# ---------------------------------------------------------------------------
# running entries


def _eval_config(entry: Entry) -> EvalConfig:
    disc = Discipline(entry.fields.get("discipline", "at"))
    return EvalConfig(fuel=int(entry.fields["fuel"]), discipline=disc)


def _run_entry(entry: Entry, report: FileReport) -> EntryResult:
    f = entry.fields
    match entry.expect:
        case "defines":
            try:
                r = report[f["symbol"]]
            except KeyError:
                return EntryResult(entry, False, "no such definition")
            return EntryResult(entry, r.ok and r.kind == "def", "" if r.ok else str(r.error))
        case "proves":
            try:
                r = report[f["item"]]
            except KeyError:
                return EntryResult(entry, False, "no such proof")
            if not r.ok:
                return EntryResult(entry, False, f"{r.error_code}: {r.error}")
            if "judgment" in f and not r.judgment.alpha_eq(parse_judgment(f["judgment"])):
                return EntryResult(entry, False, f"proved `{r.judgment}`, expected `{f['judgment']}`")
            return EntryResult(entry, True, str(r.judgment))
        case "rejects":
            try:
                r = report[f["item"]]
            except KeyError:
                return EntryResult(entry, False, "no such proof")
            if r.ok:
                return EntryResult(entry, False, f"unexpectedly proved `{r.judgment}`")
            e = r.error
            got = [r.error_code == f["code"]]
            if "rule" in f:
                got.append(getattr(e, "rule", None) == f["rule"])
            if "premise" in f:
                got.append(getattr(e, "index", None) == int(f["premise"]))
            if "kind" in f:
                j = getattr(e, "expected", None) or getattr(e, "found", None)
                got.append(j is not None and j.kind.value == f["kind"])
            return EntryResult(entry, all(got), f"{r.error_code}: {e}")
        case "evaluates":
            v = evaluate(report.env, _eval_config(entry), parse_term(f["term"]))
            text = str(v)
            return EntryResult(entry, text == f["value"], text)
        case "classifies":
            c = str(classify(report.env, _eval_config(entry), f["symbol"]))
            return EntryResult(entry, c == f["result"], c)
    raise ManifestError(f"line {entry.line}: cannot run {entry.expect} here")


def _run_file(directory: Path, name: str, entries: list[Entry]) -> list[EntryResult]:
    try:
        report = check_path(directory / name)
    except Exception as e:  # parse or IO failure fails every entry for the file
        return [EntryResult(en, False, f"{getattr(e, 'code', type(e).__name__)}: {e}") for en in entries]
    out = []
    for en in entries:
        try:
            out.append(_run_entry(en, report))
        except Exception as e:
            out.append(EntryResult(en, False, f"{getattr(e, 'code', type(e).__name__)}: {e}"))
    return out


def _run_derivations(entry: Entry) -> EntryResult:
    from ..derived import verify_all_derivations

    results = verify_all_derivations()
    good = {r.name for r in results} - {r.name for r in results if not r.ok}
    broken = sorted({r.name for r in results if not r.ok})
    ok = not broken and len(good) >= int(entry.fields["min"])
    detail = f"{len(good)} derived rules verified" + (f"; broken: {', '.join(broken)}" if broken else "")
    return EntryResult(entry, ok, detail)


def run_corpus(entries: list[Entry] | None = None, directory: Path | None = None, jobs: int = 1) -> CorpusReport:
    """Check every manifest entry; results come back in manifest order."""
    directory = Path(directory or corpus_dir())
    if entries is None:
        entries = read_manifest(directory / "manifest.txt")
    by_file: dict[str, list[Entry]] = {}
    for en in entries:
        if en.file is not None:
            by_file.setdefault(en.file, []).append(en)
    done: dict[int, EntryResult] = {}
    if jobs > 1 and len(by_file) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_file, directory, name, ens) for name, ens in by_file.items()]
            for fut in futures:
                for r in fut.result():
                    done[r.entry.line] = r
    else:
        for name, ens in by_file.items():
            for r in _run_file(directory, name, ens):
                done[r.entry.line] = r
    report = CorpusReport()
    for en in entries:
        if en.file is None:
            report.results.append(_run_derivations(en))
        else:
            report.results.append(done.get(en.line) or EntryResult(en, False, "entry was not run"))
    return report
