from hypothesis import given, settings

import oracles
from strategies import clause_sets

from hardness.cnf import BOTTOM, ClauseSet, PartialAssignment, apply, equivalent, is_satisfiable
from hardness.families import php
from hardness.reductions import r1, rk


def test_unit_propagation_examples():
    assert r1([[1], [-1, 2], [-1, -2]]).refuted
    res = r1([[1, 2]])
    assert res.reduced == ClauseSet([[1, 2]])
    assert res.forced == PartialAssignment()
    assert not res.refuted
    assert r1([[], [1]]).reduced == ClauseSet([BOTTOM])


def test_rk_examples():
    assert rk([[1], [-1]], 1).refuted
    assert rk([BOTTOM], 0).refuted
    assert not rk([[1], [-1]], 0).refuted
    F = php("plain", 3, 2)
    assert rk(F, 2).refuted
    assert not rk(F, 1).refuted


@given(clause_sets(n=4))
@settings(max_examples=150)
def test_rk_is_sound_and_matches_branching_hardness(F):
    unsat = not oracles.satisfiable(F)
    for k in range(4):
        res = rk(F, k)
        if res.refuted:
            assert unsat
        else:
            # the reduced clause-set is the forced instantiation
            assert apply(res.forced, F) == res.reduced
            assert equivalent(apply(res.forced, F), res.reduced)
    if unsat:
        h = oracles.hardness(frozenset(F))
        assert rk(F, h).refuted
        assert h == 0 or not rk(F, h - 1).refuted


@given(clause_sets(n=4))
@settings(max_examples=100)
def test_forced_literals_are_implied(F):
    res = rk(F, 2)
    if not res.refuted and is_satisfiable(F):
        for x in res.forced:
            assert not is_satisfiable(apply(PartialAssignment([-x]), F))
