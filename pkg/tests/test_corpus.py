import random

import oracles

from hardness import corpus
from hardness.cnf import ClauseSet


def test_exhaustive_corpus_size():
    insts = corpus.exhaustive_corpus(3, 8)
    assert len(insts) == 54421
    assert len(set(insts)) == len(insts)


def test_small_exhaustive_corpus_is_unsatisfiable():
    for F in corpus.exhaustive_corpus(2, 4):
        assert not oracles.satisfiable(F)
        assert len(F.variables) <= 2


def test_relabel_is_canonical_up_to_renaming():
    F = ClauseSet([[1, -2], [2]])
    G = ClauseSet([[-1], [1, 2]])
    assert corpus.relabel(F) == corpus.relabel(F)
    assert len(corpus.relabel(G).variables) == 2


def test_random_corpus_is_deterministic():
    a = corpus.random_corpus(20, 7)
    assert a == corpus.random_corpus(20, 7)
    assert a != corpus.random_corpus(20, 8)
    for F in corpus.random_corpus(200):
        assert len(F.variables) <= 5
        assert not oracles.satisfiable(F)


def test_horn_corpus():
    insts = corpus.horn_corpus(50)
    assert len(insts) == 50
    for F in insts:
        assert corpus.is_horn(F)
        assert not oracles.satisfiable(F)
    assert not corpus.is_horn([[1, 2]])


def test_random_unsat():
    F = corpus.random_unsat(random.Random(1), 4)
    assert not oracles.satisfiable(F)
