"""Bit-level clause machinery shared by the search modules.

A clause over an Encoding is an int: variable i contributes bit 2*i for the
positive literal and bit 2*i+1 for the negative one.  A partial assignment is
encoded the same way, as the set of literals it makes true.  Clause-sets are
frozensets of such ints.  Nothing in here knows about the public types.
"""
from __future__ import annotations

from functools import lru_cache


class CapExceeded(Exception):
    """Raised when an exact procedure would exceed its variable cap."""


class Encoding:
    def __init__(self, variables):
        self.variables = tuple(sorted(set(variables)))
        self.n = len(self.variables)
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.even = _even_mask(self.n)

    def lit(self, x):
        i = self.index[abs(x)]
        return 1 << (2 * i + (x < 0))

    def clause(self, literals):
        c = 0
        for x in literals:
            c |= self.lit(x)
        return c

    def clauses(self, F):
        return frozenset(self.clause(C) for C in F)

    def literals(self, c):
        out = []
        while c:
            low = c & -c
            p = low.bit_length() - 1
            v = self.variables[p >> 1]
            out.append(-v if p & 1 else v)
            c ^= low
        return out

    def var_bit(self, v):
        return 1 << (2 * self.index[v])


@lru_cache(maxsize=None)
def _even_mask(n):
    m = 0
    for i in range(n):
        m |= 1 << (2 * i)
    return m


def comp(c, E):
    return ((c & E) << 1) | ((c >> 1) & E)


def varmask(c, E):
    return (c | (c >> 1)) & E


def bits(c):
    while c:
        low = c & -c
        yield low
        c ^= low


def resolve(c, d, E):
    """Resolvent of c and d, or None unless they clash in exactly one variable."""
    x = c & comp(d, E)
    if x == 0 or x & (x - 1):
        return None
    return (c | d) & ~(x | comp(x, E))


def assign(F, a, E):
    """Apply the assignment a (set of true literals) to the clause-set F."""
    na = comp(a, E)
    keep = ~na
    return frozenset(c & keep for c in F if not c & a)


def falsifies(a, c, E):
    return comp(c, E) & ~a == 0


def subsumption_reduce(F):
    out = []
    for c in sorted(F, key=int.bit_count):
        for s in out:
            if s & ~c == 0:
                break
        else:
            out.append(c)
    return frozenset(out)


def unit_propagate(F, E):
    """Returns (reduced, forced, refuted)."""
    forced = 0
    while True:
        if 0 in F:
            return frozenset([0]), forced, True
        a = 0
        for c in F:
            if c & (c - 1) == 0:
                a |= c
        if not a:
            return F, forced, False
        if a & comp(a, E):
            return frozenset([0]), forced, True
        forced |= a
        F = assign(F, a, E)


def find_model(F, E):
    """A satisfying partial assignment (true-literal bits) or None."""
    F, forced, refuted = unit_propagate(F, E)
    if refuted:
        return None
    if not F:
        return forced
    c = min(F, key=lambda c: (c.bit_count(), c))
    x = c & -c
    for lit in (x, comp(x, E)):
        m = find_model(assign(F, lit, E), E)
        if m is not None:
            return m | forced | lit
    return None


def satisfiable(F, E):
    return find_model(F, E) is not None


def literals_of(F):
    a = 0
    for c in F:
        a |= c
    return a


def prime_implicates(F, E):
    """Consensus saturation with subsumption deletion."""
    S = set(subsumption_reduce(F))
    if 0 in S:
        return frozenset([0])
    queue = sorted(S, key=lambda c: (c.bit_count(), c))
    processed = []
    while queue:
        c = queue.pop(0)
        if c not in S:
            continue
        new = []
        for d in processed:
            if d not in S:
                continue
            r = resolve(c, d, E)
            if r is None or r in S:
                continue
            if any(s & ~r == 0 for s in S):
                continue
            for s in [s for s in S if r & ~s == 0]:
                S.discard(s)
            S.add(r)
            new.append(r)
            if r == 0:
                return frozenset([0])
        if c in S:
            processed.append(c)
        queue.extend(new)
        queue.sort(key=lambda c: (c.bit_count(), c))
    return frozenset(S)


# truth tables: bit t of a table is assignment t, where bit i of t is variable i


@lru_cache(maxsize=None)
def var_tables(n):
    size = 1 << n
    full = (1 << size) - 1
    tabs = []
    for i in range(n):
        block = 1 << i
        unit = ((1 << block) - 1) << block
        period = 2 * block
        rep = full // ((1 << period) - 1)
        tabs.append(unit * rep)
    return tuple(tabs), full


def falsified_table(c, n):
    tabs, full = var_tables(n)
    t = full
    for i in range(n):
        if c >> (2 * i) & 1:
            t &= ~tabs[i]
        elif c >> (2 * i + 1) & 1:
            t &= tabs[i]
    return t & full


def model_table(F, n):
    tabs, full = var_tables(n)
    t = full
    for c in F:
        t &= ~falsified_table(c, n)
    return t & full


def clause_universe(n, max_len=None):
    """All clauses over n encoded variables, by increasing length."""
    out = [0]
    for i in range(n):
        out = out + [c | (1 << (2 * i)) for c in out] + [c | (1 << (2 * i + 1)) for c in out]
    if max_len is not None:
        out = [c for c in out if c.bit_count() <= max_len]
    out.sort(key=lambda c: (c.bit_count(), c))
    return out
