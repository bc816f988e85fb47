import pytest
from hypothesis import given, settings

import oracles
from strategies import clause_sets

from hardness.cnf import (
    BOTTOM,
    EPSILON,
    TOP,
    Clause,
    ClauseSet,
    DimacsError,
    PartialAssignment,
    TautologyError,
    apply,
    entails,
    equivalent,
    find_model,
    from_json,
    is_satisfiable,
    parse_dimacs,
    prime_implicates,
    subsumption_reduce,
    to_json,
    write_dimacs,
)
from hardness.families import php


def test_clause_rejects_tautology():
    with pytest.raises(TautologyError):
        Clause([1, -1])


def test_apply_examples():
    F = ClauseSet([[1], [-1, 2]])
    assert apply(EPSILON, F) == F
    assert apply(PartialAssignment([1]), F) == ClauseSet([[2]])
    phi = PartialAssignment.falsifying(Clause([1, 2]))
    assert apply(phi, ClauseSet([[1, 2, 3]])) == ClauseSet([[3]])


def test_satisfiability_examples():
    assert is_satisfiable(TOP)
    assert not is_satisfiable(ClauseSet([BOTTOM]))
    assert not is_satisfiable(php("plain", 3, 2))


def test_entailment_examples():
    F = ClauseSet([[1], [-1, 2]])
    assert entails(F, F)
    assert entails(F, [[2]])
    assert entails([BOTTOM], [[5], [-7, 8]])


def test_prime_implicate_examples():
    assert prime_implicates([BOTTOM]) == ClauseSet([BOTTOM])
    assert prime_implicates([[1], [-1, 2]]) == ClauseSet([[1], [2]])
    assert prime_implicates([[1, 2], [1, -2]]) == ClauseSet([[1]])


def test_subsumption_examples():
    assert subsumption_reduce([[1], [1, 2]]) == ClauseSet([[1]])
    assert subsumption_reduce(TOP) == TOP
    assert subsumption_reduce([[1], [2]]) == ClauseSet([[1], [2]])


def test_dimacs_examples():
    assert parse_dimacs(b"p cnf 2 2\n1 2 0\n-1 0\n") == ClauseSet([[1, 2], [-1]])
    assert parse_dimacs(b"p cnf 1 1\n0\n") == ClauseSet([BOTTOM])
    with pytest.raises(DimacsError):
        parse_dimacs(b"p cnf 1 1\n1 -1 0\n")
    assert write_dimacs([BOTTOM]) == b"p cnf 0 1\n0\n"
    assert write_dimacs(TOP) == b"p cnf 0 0\n"


def test_dimacs_errors():
    for text in [b"1 2 0\n", b"p cnf x 1\n", b"p cnf 1 1\n1 a 0\n", b"c only\n"]:
        with pytest.raises(DimacsError):
            parse_dimacs(text)


@given(clause_sets())
def test_dimacs_and_json_round_trip(F):
    assert parse_dimacs(write_dimacs(F)) == F
    assert from_json(to_json(F)) == F


@given(clause_sets())
@settings(max_examples=150)
def test_satisfiability_matches_truth_tables(F):
    assert is_satisfiable(F) == oracles.satisfiable(F)
    m = find_model(F)
    assert (m is not None) == oracles.satisfiable(F)
    if m is not None:
        assert apply(m, F) == TOP


@given(clause_sets(n=3), clause_sets(n=3, max_clauses=3))
@settings(max_examples=100)
def test_entailment_matches_truth_tables(F, G):
    assert entails(F, G) == oracles.entails(F, G)


@given(clause_sets(n=3))
@settings(max_examples=100)
def test_prime_implicates_match_enumeration(F):
    P = prime_implicates(F)
    if F:
        assert P == oracles.prime_implicates(F)
    assert equivalent(F, P)


@given(clause_sets())
def test_subsumption_reduce_keeps_meaning(F):
    G = subsumption_reduce(F)
    assert G <= F
    assert equivalent(F, G)
    assert not any(C < D for C in G for D in G)


def test_partial_assignment_basics():
    phi = PartialAssignment.from_dict({1: 1, 3: 0})
    assert phi == PartialAssignment([1, -3])
    assert phi.as_dict() == {1: 1, 3: 0}
    assert phi.value(3) == 0 and phi.value(2) is None
    with pytest.raises(ValueError):
        PartialAssignment([2, -2])
