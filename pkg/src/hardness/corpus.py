"""Instance corpora: exhaustive small clause-sets up to isomorphism, and seeded random ones."""
from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np

from .cnf import Clause, ClauseSet, is_satisfiable

DEFAULT_SEED = 20240607


def _clause_table(n):
    # each variable is absent (0), positive (1) or negative (2)
    return list(itertools.product([0, 1, 2], repeat=n))


@lru_cache(maxsize=None)
def _symmetry_tables(n):
    """Lookup tables mapping 9-bit chunks of a clause-set mask under each symmetry."""
    clauses = _clause_table(n)
    idx = {c: i for i, c in enumerate(clauses)}
    N = len(clauses)
    chunks = (N + 8) // 9
    maps = []
    for perm in itertools.permutations(range(n)):
        for flip in itertools.product([0, 1], repeat=n):
            m = []
            for c in clauses:
                d = [0] * n
                for v in range(n):
                    s = c[v]
                    if s and flip[v]:
                        s = 3 - s
                    d[perm[v]] = s
                m.append(idx[tuple(d)])
            maps.append(m)
    tabs = np.zeros((len(maps), chunks, 512), dtype=np.int64)
    for pi, m in enumerate(maps):
        for ch in range(chunks):
            for val in range(512):
                r = 0
                for b in range(9):
                    j = ch * 9 + b
                    if j < N and val >> b & 1:
                        r |= 1 << m[j]
                tabs[pi, ch, val] = r
    return tabs


def _canonical(masks, n):
    tabs = _symmetry_tables(n)
    best = None
    for pi in range(tabs.shape[0]):
        im = np.zeros_like(masks)
        for ch in range(tabs.shape[1]):
            im |= tabs[pi, ch][(masks >> (9 * ch)) & 511]
        best = im if best is None else np.minimum(best, im)
    return best


def isomorphism_classes(n=3, max_clauses=8):
    """Canonical masks of all clause-sets over n variables, by clause count."""
    N = 3 ** n
    if N > 62:
        raise ValueError("exhaustive enumeration supports n <= 3")
    level = np.array([0], dtype=np.int64)
    out = []
    unit = (np.int64(1) << np.arange(N, dtype=np.int64))
    for _ in range(max_clauses):
        cand = (level[:, None] | unit[None, :]).ravel()
        cand = cand[cand != np.repeat(level, N)]
        level = np.unique(_canonical(np.unique(cand), n))
        out.append(level)
    return out


def _mask_to_clauseset(mask, n):
    clauses = _clause_table(n)
    out = []
    for i, c in enumerate(clauses):
        if mask >> i & 1:
            out.append(Clause((v + 1) if s == 1 else -(v + 1) for v, s in enumerate(c) if s))
    return relabel(ClauseSet(out))


def relabel(F):
    """Rename the variables of F to 1..n(F), preserving their order."""
    ren = {v: i + 1 for i, v in enumerate(sorted(ClauseSet(F).variables))}
    return ClauseSet(Clause((ren[abs(x)] if x > 0 else -ren[abs(x)]) for x in C) for C in F)


def exhaustive_corpus(n=3, max_clauses=8, unsat_only=True):
    """Clause-sets over at most n variables with 1..max_clauses clauses, one per isomorphism class."""
    out = []
    for level in isomorphism_classes(n, max_clauses):
        for mask in level.tolist():
            F = _mask_to_clauseset(mask, n)
            if unsat_only and is_satisfiable(F):
                continue
            out.append(F)
    return out


def random_clause(rng, n, length):
    vs = rng.sample(range(1, n + 1), length)
    return Clause(v if rng.random() < 0.5 else -v for v in vs)


def random_unsat(rng, n, min_len=1, max_len=3):
    """Add random clauses over 1..n until unsatisfiable."""
    clauses = set()
    while True:
        length = rng.randint(min_len, min(max_len, n))
        clauses.add(random_clause(rng, n, length))
        F = ClauseSet(clauses)
        if not is_satisfiable(F):
            return relabel(F)


def random_corpus(count=200, seed=DEFAULT_SEED, max_vars=5):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, max_vars)
        min_len = 1 if rng.random() < 0.3 else 2
        out.append(random_unsat(rng, n, min_len, 3))
    return out


def random_horn(rng, n):
    """A random unsatisfiable Horn clause-set without the empty clause."""
    clauses = set()
    while True:
        length = rng.randint(1, min(3, n))
        vs = rng.sample(range(1, n + 1), length)
        if rng.random() < 0.75:
            lits = [vs[0]] + [-v for v in vs[1:]]
        else:
            lits = [-v for v in vs]
        clauses.add(Clause(lits))
        F = ClauseSet(clauses)
        if not is_satisfiable(F):
            return relabel(F)


def horn_corpus(count=50, seed=DEFAULT_SEED, max_vars=6):
    rng = random.Random(seed + 1)
    return [random_horn(rng, rng.randint(1, max_vars)) for _ in range(count)]


def is_horn(F):
    return all(sum(1 for x in C if x > 0) <= 1 for C in F)
