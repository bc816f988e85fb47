import itertools

import pytest
from hypothesis import given, settings

import oracles
from strategies import clause_sets

from hardness.cnf import BOTTOM, Clause, ClauseSet, is_satisfiable
from hardness.extensions import (
    ARITY_CAP,
    ExtensionStep,
    FreshnessError,
    addable_in_any_order,
    addable_in_order,
    definition_clauses,
    eliminate_blocked,
    extend,
    extension_from_refutation,
    is_blocked,
    is_blocked_clause,
)
from hardness.families import ephp, ephp_blocks, php
from hardness.measures import hardness
from hardness.reductions import rk
from hardness.resolution import ResolutionProof, branching_refutation


def test_blocked_examples():
    F = ClauseSet([[1, 2], [2, 3]])
    assert is_blocked([1], 1, F)
    assert is_blocked([1, 2], 1, [[-1, -2]])
    assert not is_blocked([1], 1, [[-1, 3]])
    with pytest.raises(ValueError):
        is_blocked([1], 2, F)


def test_eliminate_blocked_examples():
    assert eliminate_blocked([[1], [2], [-2]]) == ClauseSet([[2], [-2]])
    F = ClauseSet([[1, 2], [-1, 2], [1, -2], [-1, -2]])
    assert eliminate_blocked(F) == F


@given(clause_sets(n=4))
@settings(max_examples=100)
def test_blocked_elimination_preserves_satisfiability(F):
    G = eliminate_blocked(F)
    assert G <= F
    assert oracles.satisfiable(G) == oracles.satisfiable(F)
    assert not any(is_blocked_clause(C, G) for C in G)


def test_ephp_blocked_two_clause_elimination():
    losses = []
    for n in range(1, 5):
        F = ephp(n)
        losses.append(len(F) - len(eliminate_blocked(F, length=2)))
    assert losses == [n * (n + 1) // 2 - 1 for n in range(1, 5)] == [0, 2, 5, 9]


def test_ephp_blocks_addable_in_any_order():
    for n in range(2, 5):
        cur = set(php("plain", n + 1, n))
        for _, block in ephp_blocks(n):
            assert addable_in_any_order(cur, block)
            cur.update(block)


def test_addable_in_order_fails_for_resolvable_clause():
    assert not addable_in_order([[1]], [[-1, 2], [-2]])
    assert addable_in_order([[1]], [[2, 3]])


def test_restricted_step():
    step = ExtensionStep.restricted(3, 1, 2)
    assert set(step.emitted_clauses) == {Clause([-1, 3]), Clause([-2, 3]), Clause([1, 2, -3])}
    F = ClauseSet([[1], [2]])
    G = extend(F, step)
    assert G == F | step.emitted_clauses
    assert all(3 in C.variables for C in step.emitted_clauses)


def test_extension_step_checks():
    with pytest.raises(FreshnessError):
        extend([[1], [2], [3]], ExtensionStep.restricted(3, 1, 2))
    with pytest.raises(FreshnessError):
        extend([[1]], ExtensionStep.restricted(3, 1, 2))
    with pytest.raises(ValueError):
        ExtensionStep.restricted(3, 1, -1)
    with pytest.raises(ValueError):
        ExtensionStep.from_table(20, range(1, ARITY_CAP + 2), [0] * (1 << (ARITY_CAP + 1)))
    with pytest.raises(ValueError):
        ExtensionStep.from_table(5, [1, 2], [0, 1])


def test_extension_from_table_defines_the_function():
    step = ExtensionStep.from_function(4, [1, 2, 3], lambda a, b, c: a ^ b ^ c)
    for a, b, c in itertools.product([0, 1], repeat=3):
        lits = [1 if a else -1, 2 if b else -2, 3 if c else -3]
        assert is_satisfiable(step.emitted_clauses | ClauseSet([[x] for x in lits] + [[4 if a ^ b ^ c else -4]]))
        assert not is_satisfiable(step.emitted_clauses | ClauseSet([[x] for x in lits] + [[-4 if a ^ b ^ c else 4]]))


@given(clause_sets(n=4))
@settings(max_examples=80)
def test_extension_preserves_satisfiability(F):
    V = sorted(F.variables)
    if len(V) < 2:
        return
    fresh = max(V) + 1
    for step in [ExtensionStep.restricted(fresh, V[0], -V[1]),
                 ExtensionStep.from_function(fresh, V[:2], lambda a, b: a & b)]:
        assert is_satisfiable(extend(F, step)) == is_satisfiable(F)


def test_definition_clauses():
    assert definition_clauses(9, [1, -2]) == [Clause([1, -2, -9]), Clause([9, -1]), Clause([9, 2])]


def test_extension_of_trivial_refutation():
    F = ClauseSet([[1], [-1]])
    R = ResolutionProof.derive(ResolutionProof([1]), ResolutionProof([-1]))
    G, names = extension_from_refutation(F, R)
    assert G == F and names == {}


def test_extension_of_php_refutation():
    F = php("plain", 3, 2)
    R = branching_refutation(F)
    G, names = extension_from_refutation(F, R)
    assert len(names) == 9
    assert hardness(G) <= 2
    assert rk(G, 2).refuted


def test_extension_rejects_foreign_proof():
    R = ResolutionProof.derive(ResolutionProof([5]), ResolutionProof([-5]))
    with pytest.raises(ValueError):
        extension_from_refutation([[1], [-1]], R)


@given(clause_sets(n=4))
@settings(max_examples=80, deadline=None)
def test_extension_of_refutations_has_hardness_at_most_two(F):
    if oracles.satisfiable(F):
        return
    for objective in ("hardness", "depth", "size"):
        G, names = extension_from_refutation(F, branching_refutation(F, objective))
        assert hardness(G) <= 2
        assert BOTTOM not in names
