from __future__ import annotations

import pytest
from hypothesis import given, settings

from gen import terms
from gdc.kernel import DefItem, Pragma, ProofItem
from gdc.parser import (
    DuplicateProofName,
    GdSyntaxError,
    MAX_NUMERAL,
    ReservedWord,
    parse_file,
    parse_judgment,
    parse_term,
    print_file,
    print_judgment,
    print_proof,
    print_term,
    proof_from_sexpr,
    read_sexprs,
)
from gdc.proof import Assume, Hyp, Rule
from gdc.term import (
    And,
    App,
    Eq,
    Exists,
    Forall,
    Has,
    Iff,
    Imp,
    JudgKind,
    Not,
    Or,
    TRUE,
    Var,
    ZERO,
    alpha_eq,
    as_numeral,
    numeral,
)


@pytest.mark.parametrize(
    "text, want",
    [
        ("a and b or c", Or(And(App("a"), App("b")), App("c"))),
        ("a -> b -> c", Imp(App("a"), Imp(App("b"), App("c")))),
        ("a <-> b -> c", Iff(App("a"), Imp(App("b"), App("c")))),
        ("not a = b", Not(Eq(App("a"), App("b")))),
        ("?x : nat", Has(Var("x"), JudgKind.NAT)),
        ("2", numeral(2)),
        ("f(0, ?y)", App("f", (ZERO, Var("y")))),
    ],
)
def test_precedence_and_associativity(text, want):
    assert parse_term(text) == want


def test_unicode_aliases_match_ascii():
    ascii_ = parse_term("forall x. not ?x = 0 -> exists y. ?y != ?x and true or false <-> true")
    uni = parse_term("∀ x. ¬ ?x = 0 → ∃ y. ?y ≠ ?x ∧ true ∨ false ↔ true")
    assert uni == ascii_


def test_bound_identifiers_are_variables_and_others_symbols():
    t = parse_term("forall x. x = y")
    assert t == Forall("x", Eq(Var("x"), App("y")))


def test_typed_quantifiers_desugar():
    assert alpha_eq(parse_term("forall n:nat. n = n"),
                    Forall("n", Imp(Has(Var("n"), JudgKind.NAT), Eq(Var("n"), Var("n")))))
    assert alpha_eq(parse_term("exists n:nat. n = 0"),
                    Exists("n", Imp(Has(Var("n"), JudgKind.NAT), Eq(Var("n"), ZERO))))


def test_judgment_takes_the_last_kind():
    j = parse_judgment("forall a:nat. plus(a, 0) : nat : true")
    assert j.kind is JudgKind.TRUE
    assert isinstance(j.subject, Forall)
    assert print_judgment(j) == "(forall a. (a : nat) -> (plus(a, 0) : nat)) : true"
    assert parse_judgment(print_judgment(j)).alpha_eq(j)


def test_numeral_cap():
    assert as_numeral(parse_term(str(MAX_NUMERAL))) == MAX_NUMERAL
    with pytest.raises(GdSyntaxError):
        parse_term(str(MAX_NUMERAL + 1))


def test_reserved_word_cannot_be_bound():
    with pytest.raises(GdSyntaxError):
        parse_term("forall nat. true")
    with pytest.raises(ReservedWord):
        parse_file("proof p\n  vars bool\n  by (rule trueAx)\n")


def test_error_spans_point_at_the_offending_token():
    with pytest.raises(GdSyntaxError) as e:
        parse_term("a and\n  b )")
    assert e.value.span == (2, 5)
    with pytest.raises(GdSyntaxError) as e:
        parse_term("a $ b")
    assert e.value.span == (1, 3)


def test_file_error_spans_are_absolute():
    text = "def one := S(0)\n\nproof p\n  shows true : true\n  by (rule trueAx (sub)))\n"
    with pytest.raises(GdSyntaxError) as e:
        parse_file(text)
    assert e.value.span[0] == 5


def test_duplicate_proof_name():
    text = "proof p\n  by (rule trueAx)\n\nproof p\n  by (rule trueAx)\n"
    with pytest.raises(DuplicateProofName) as e:
        parse_file(text)
    assert e.value.span == (4, 1)


def test_file_items_and_comments():
    text = (
        "-- header comment\n"
        "def f(x) := S(x)  -- trailing\n"
        "pragma discipline dt\n"
        "proof p\n"
        "  vars a\n"
        "  assume h : a : true\n"
        "  shows a : true\n"
        "  by (hyp h)\n"
    )
    sf = parse_file(text)
    d, pr, p = sf.items
    assert isinstance(d, DefItem) and d.definition.params == ("x",)
    assert isinstance(pr, Pragma) and (pr.key, pr.value) == ("discipline", "dt")
    assert isinstance(p, ProofItem) and p.variables == {"a"} and p.hyps[0][0] == "h"
    assert p.proof == Hyp("h")
    assert print_file(parse_file(print_file(sf))) == print_file(sf)


def test_item_must_start_with_keyword():
    with pytest.raises(GdSyntaxError):
        parse_file("lemma p\n")
    with pytest.raises(GdSyntaxError):
        parse_file("  indented\n")
    with pytest.raises(GdSyntaxError):
        parse_file("proof p\n  shows true : true\n")


def test_sexpr_proofs_round_trip():
    text = '(rule andI1 (inst (a "true") (b "?x")) (sub (rule trueAx) (assume (h) (hyp h))))'
    node = proof_from_sexpr(read_sexprs(text)[0])
    assert isinstance(node, Rule) and node.name == "andI1"
    assert node.inst.terms["a"] == TRUE
    assert isinstance(node.subs[1], Assume)
    again = proof_from_sexpr(read_sexprs(print_proof(node))[0])
    assert again == node


def test_sexpr_errors():
    with pytest.raises(GdSyntaxError):
        read_sexprs("(rule trueAx")
    with pytest.raises(GdSyntaxError):
        proof_from_sexpr(read_sexprs("(frobnicate)")[0])


def test_printing_marks_free_variables():
    assert print_term(Eq(Var("a"), ZERO)) == "?a = 0"
    assert print_term(Eq(Var("a"), ZERO), scope=("a",)) == "a = 0"


@settings(max_examples=300, deadline=None)
@given(terms(max_depth=5))
def test_print_then_parse_is_alpha_equal(t):
    assert alpha_eq(parse_term(print_term(t)), t)


@settings(max_examples=100, deadline=None)
@given(terms(max_depth=4))
def test_printing_is_a_fixed_point(t):
    text = print_term(t)
    assert print_term(parse_term(text)) == text


def test_percent_labels_are_reserved():
    with pytest.raises(ReservedWord):
        parse_file("proof p\n  by (assume (%1) (hyp h))\n")
    with pytest.raises(ReservedWord):
        parse_file("proof p\n  by (hyp %2)\n")


def test_string_escapes_in_proofs():
    sx = read_sexprs(r'(rule eqR (inst (a "f(\"\\x\")")))')
    assert sx[0].items[2].items[1].items[1].text == 'f("\\x")'
