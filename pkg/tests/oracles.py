"""Slow, direct reference implementations used to cross-check the library."""
import itertools
from functools import lru_cache

from hardness.cnf import Clause, ClauseSet


def variables(F):
    return sorted({abs(x) for C in F for x in C})


def models(F, V=None):
    V = variables(F) if V is None else sorted(V)
    for bits in itertools.product([False, True], repeat=len(V)):
        val = dict(zip(V, bits))
        if all(any(val[abs(x)] == (x > 0) for x in C) for C in F):
            yield val


def satisfiable(F):
    return next(models(F), None) is not None


def entails(F, G):
    V = sorted(set(variables(F)) | set(variables(G)))
    return all(all(any(m[abs(x)] == (x > 0) for x in D) for D in G) for m in models(F, V))


def all_clauses(V):
    for signs in itertools.product([0, 1, -1], repeat=len(V)):
        yield Clause(v * s for v, s in zip(V, signs) if s)


def prime_implicates(F):
    V = variables(F)
    implied = [C for C in all_clauses(V) if entails(F, [C])]
    if not satisfiable(F):
        return ClauseSet([Clause()])
    return ClauseSet(C for C in implied if not any(D < C for D in implied))


def assign(F, lit):
    return frozenset(Clause(C - {-lit}) for C in F if lit not in C)


@lru_cache(maxsize=None)
def hardness(F):
    """Least Horton-Strahler number of a branching tree; F unsatisfiable."""
    F = frozenset(F)
    if Clause() in F:
        return 0
    best = None
    for v in variables(F):
        a, b = hardness(assign(F, v)), hardness(assign(F, -v))
        h = max(a, b) if a != b else a + 1
        best = h if best is None else min(best, h)
    return best


@lru_cache(maxsize=None)
def depth(F):
    F = frozenset(F)
    if Clause() in F:
        return 0
    return 1 + min(max(depth(assign(F, v)), depth(assign(F, -v))) for v in variables(F))


def resolvents(C, D):
    out = []
    for x in C:
        if -x in D:
            if sum(1 for y in C if -y in D) == 1:
                out.append(Clause((C - {x}) | (D - {-x})))
    return out


def closure(F, allow):
    """All clauses derivable by steps allow(C, D, R) accepts."""
    S = set(Clause(C) for C in F)
    changed = True
    while changed:
        changed = False
        for C, D in itertools.combinations(list(S), 2):
            for R in resolvents(C, D):
                if R not in S and allow(C, D, R):
                    S.add(R)
                    changed = True
    return S


def asym_width(F):
    k = 0
    while Clause() not in closure(F, lambda C, D, R: min(len(C), len(D)) <= k) and Clause() not in F:
        k += 1
    return k


def sym_width(F):
    k = 0
    while True:
        short = [C for C in F if len(C) <= k]
        if Clause() in closure(short, lambda C, D, R: len(R) <= k):
            return k
        k += 1


@lru_cache(maxsize=None)
def tree_size(F):
    """Fewest leaves of a branching tree; F unsatisfiable."""
    F = frozenset(F)
    if Clause() in F:
        return 1
    return min(tree_size(assign(F, v)) + tree_size(assign(F, -v)) for v in variables(F))
