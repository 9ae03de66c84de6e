"""Clones on the four-element De Morgan algebra DM4 = {t, f, n, b}."""

from .catalog import CATALOG, catalog_lookup, name_of, rows
from .clones import BASES, CapExceeded, CloneSpec, closure_fixed_arity, find_term, parse_genlist
from .core import B, ELEMENTS, F, FnTable, N, T, Element, decode_table, dual, encode_table
from .lattice import LatticeDescription, emit_lattice, lattice_description
from .logic import classify, entails, implication_check, interval_contains, interval_count
from .predicates import Predicate, count_functions, enumerate_functions, predicate_check
from .relations import (
    BinaryRelation16,
    clone_equal,
    clone_leq,
    inv2,
    member,
    member_many,
    separating_relation,
    witness_nonmembership,
)
from .terms import parse_term, term_to_table
from .verify import Options, SuiteResult, run_suite

__all__ = [
    "B", "BASES", "BinaryRelation16", "CATALOG", "CapExceeded", "CloneSpec", "ELEMENTS",
    "Element", "F", "FnTable", "LatticeDescription", "N", "Options", "Predicate",
    "SuiteResult", "T", "catalog_lookup", "classify", "clone_equal", "clone_leq",
    "closure_fixed_arity", "count_functions", "decode_table", "dual", "emit_lattice",
    "encode_table", "entails", "enumerate_functions", "find_term", "implication_check",
    "interval_contains", "interval_count", "inv2", "lattice_description", "member",
    "member_many", "name_of", "parse_genlist", "parse_term", "predicate_check", "rows",
    "run_suite", "separating_relation", "term_to_table", "witness_nonmembership",
]
