"""Grounded deduction: a proof-checking kernel and a three-valued evaluator.

The main entry points are re-exported here; see the submodules for the
full interfaces.
"""

from .defenv import DefEnv, Definition, add_def
from .derived import EXPANDERS, expand_derived, verify_all_derivations
from .evaluator import EvalConfig, Nat, Truth, classify, evaluate
from .judgment import Context, Judgment
from .kernel import CheckConfig, CheckError, Discipline, check, check_file
from .parser import parse_file, parse_judgment, parse_term, print_file, print_judgment, print_term

__all__ = [
    "CheckConfig",
    "CheckError",
    "Context",
    "DefEnv",
    "Definition",
    "Discipline",
    "EXPANDERS",
    "EvalConfig",
    "Judgment",
    "Nat",
    "Truth",
    "add_def",
    "check",
    "check_file",
    "classify",
    "evaluate",
    "expand_derived",
    "parse_file",
    "parse_judgment",
    "parse_term",
    "print_file",
    "print_judgment",
    "print_term",
    "verify_all_derivations",
]
