"""The examples in docs/syntax.md, checked against the parser and printer."""

from __future__ import annotations

import re
from pathlib import Path

import pytest

from gdc.corpus import EXPECTATIONS, parse_manifest
from gdc.defenv import DefEnv
from gdc.kernel import check_file
from gdc.parser import GdSyntaxError, KEYWORDS, MAX_NUMERAL, parse_file, parse_judgment, parse_term, print_file, print_judgment, print_term

DOC = Path(__file__).resolve().parent.parent / "docs" / "syntax.md"
TEXT = DOC.read_text()


def blocks(tag: str) -> list[str]:
    return re.findall(rf"^```{re.escape(tag)}\n(.*?)^```", TEXT, re.S | re.M)


def pairs(tag: str) -> list[tuple[str, str]]:
    out = []
    for block in blocks(tag):
        for line in block.splitlines():
            left, right = line.split("  ==>  ")
            out.append((left, right))
    assert out, tag
    return out


@pytest.mark.parametrize("source, printed", pairs("golden-terms"))
def test_term_examples(source, printed):
    t = parse_term(source)
    assert print_term(t) == printed
    assert parse_term(printed) == t


@pytest.mark.parametrize("source, printed", pairs("golden-judgments"))
def test_judgment_examples(source, printed):
    j = parse_judgment(source)
    assert print_judgment(j) == printed
    assert parse_judgment(printed).alpha_eq(j)


@pytest.mark.parametrize("source, code", pairs("golden-errors"))
def test_error_examples(source, code):
    with pytest.raises(GdSyntaxError) as e:
        parse_term(source)
    assert e.value.code == code


def test_example_file_checks():
    (text,) = blocks("gd")
    sf = parse_file(text)
    report = check_file(DefEnv(), None, sf.items)
    assert report.ok, [(r.name, str(r.error)) for r in report.items if not r.ok]
    assert print_file(parse_file(print_file(sf))) == print_file(sf)


def test_manifest_examples():
    (text,) = blocks("golden-manifest")
    entries = parse_manifest(text)
    assert {e.expect for e in entries} == set(EXPECTATIONS)


def test_reserved_words_are_listed():
    line = next(l for l in TEXT.splitlines() if l.startswith("- Reserved words:"))
    assert set(re.search(r"`([^`]*)`", line).group(1).split()) == KEYWORDS


def test_numeral_limit_is_stated():
    assert f"numeral is {MAX_NUMERAL}" in " ".join(TEXT.split())


USES = {
    "not": "{} a",
    "forall": "{} x. x = x",
    "exists": "{} x. x = x",
    "=>": "case 0 of {{ 0 {} a | S(p) {} b }}",
}


def test_unicode_table_matches_parser():
    rows = re.findall(r"^\| `(.)`\s*\| `([^`]+)`", TEXT, re.M)
    assert len(rows) == 9
    for uni, ascii_ in rows:
        template = USES.get(ascii_, "a {} b")
        n = template.count("{}")
        assert parse_term(template.format(*[uni] * n)) == parse_term(template.format(*[ascii_] * n))
