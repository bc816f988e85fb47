import pytest
from hypothesis import given, settings

import oracles
from strategies import clause_sets

from hardness.cnf import BOTTOM, Clause, ClauseSet
from hardness.families import php
from hardness.resolution import (
    NotResolvable,
    ProofError,
    ResolutionProof,
    branching_refutation,
    check_proof,
    depth_by_search,
    hardness_by_search,
    horton_strahler,
    input_derivable,
    ires_top,
    kres_closure,
    kres_closure_via_input,
    optimal_tree_size,
    resolve,
)


def leaf(*lits):
    return ResolutionProof(lits)


def test_resolve_examples():
    assert resolve([1, 2], [-1, 3]) == Clause([2, 3])
    assert resolve([1], [-1]) == BOTTOM
    with pytest.raises(NotResolvable):
        resolve([1, 2], [-1, -2])
    with pytest.raises(NotResolvable):
        resolve([1], [2])


def test_check_proof_examples():
    F = ClauseSet([[1], [-1]])
    assert check_proof(leaf(1), F, [1])
    R = ResolutionProof.derive(leaf(1), leaf(-1))
    assert check_proof(R, F, BOTTOM)
    assert not check_proof(ResolutionProof.derive(leaf(2), leaf(-2)), F, BOTTOM)
    assert not check_proof(R, F, [1])


def test_horton_strahler_examples():
    assert horton_strahler(leaf(1)) == 0
    assert horton_strahler(ResolutionProof.derive(leaf(1), leaf(-1))) == 1
    # perfect tree of height 2 over the four full clauses in two variables
    a = ResolutionProof.derive(leaf(1, 2), leaf(1, -2))
    b = ResolutionProof.derive(leaf(-1, 2), leaf(-1, -2))
    assert horton_strahler(ResolutionProof.derive(a, b)) == 2
    # a comb stays at 1
    comb = ResolutionProof.derive(ResolutionProof.derive(leaf(1, 2), leaf(-2)), leaf(-1))
    assert horton_strahler(comb) == 1


def test_proof_text_round_trip():
    R = branching_refutation(php("plain", 3, 2))
    S = ResolutionProof.from_text(R.to_text())
    assert S.to_text() == R.to_text()
    with pytest.raises(ProofError):
        ResolutionProof.from_text("1: 1 2 [from 7,8]\n")
    with pytest.raises(ProofError):
        ResolutionProof.from_text("")


def test_input_derivable_examples():
    assert input_derivable([[1, 2]], [1, 2])
    assert input_derivable([[1], [-1, 2]], [2])
    assert not input_derivable([[1, 2], [-1, -2]], BOTTOM)


def test_ires_top_examples():
    assert not ires_top([[1], [-1, 2], [-1, -2]], [1])
    assert ires_top([[-1]], [1])
    assert ires_top([[1], [-1]], [1])


def test_kres_closure_examples():
    F = ClauseSet([[1], [-1, 2], [-1, -2]])
    assert kres_closure([[1, 2], [-1, 3]], 0) == ClauseSet([[1, 2], [-1, 3]])
    assert BOTTOM in kres_closure(F, 1)
    horn = ClauseSet([[1], [-1, 2], [-1, -2, 3], [-3, -1]])
    assert BOTTOM in kres_closure(horn, 1)
    assert BOTTOM in kres_closure_via_input(F, 1)
    assert kres_closure_via_input([[1, 2, 3], [-1, -2, -3]], 1) == ClauseSet()


def test_optimal_tree_size_examples():
    assert optimal_tree_size([BOTTOM]) == 1
    assert optimal_tree_size([[1], [-1]]) == 2
    assert optimal_tree_size(php("plain", 3, 2)) == 11


@given(clause_sets(n=4))
@settings(max_examples=100)
def test_optimal_tree_size_matches_oracle(F):
    if not oracles.satisfiable(F):
        assert optimal_tree_size(F) == oracles.tree_size(frozenset(F))


@given(clause_sets(n=4))
@settings(max_examples=150)
def test_branching_refutations_are_valid_and_optimal(F):
    if oracles.satisfiable(F):
        return
    for objective, measure in [("hardness", horton_strahler), ("depth", ResolutionProof.height)]:
        R = branching_refutation(F, objective)
        assert check_proof(R, F, BOTTOM)
        assert measure(R) == (hardness_by_search(F) if objective == "hardness" else depth_by_search(F))
    assert hardness_by_search(F) == oracles.hardness(frozenset(F))
    assert depth_by_search(F) == oracles.depth(frozenset(F))
    R = branching_refutation(F, "size")
    assert check_proof(R, F, BOTTOM)
    assert R.leaf_count() == optimal_tree_size(F)


@given(clause_sets(n=4))
@settings(max_examples=100)
def test_closure_matches_naive_saturation(F):
    for k in range(3):
        naive = oracles.closure(F, lambda C, D, R: min(len(C), len(D)) <= k)
        assert (BOTTOM in naive) == (BOTTOM in kres_closure(F, k))
        assert (BOTTOM in kres_closure(F, k)) == (BOTTOM in kres_closure_via_input(F, k))
