"""Generators for the standard formula families, with variable name maps."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb

from .cnf import Clause, ClauseSet
from .games import TseitinGraph


class PhpVariant(str, enum.Enum):
    plain = "plain"
    functional = "functional"
    onto = "onto"
    onto_functional = "onto_functional"


PHP_ALIASES = {"php": "plain", "fphp": "functional", "ophp": "onto", "ofphp": "onto_functional"}


def php_variant(name):
    if isinstance(name, PhpVariant):
        return name
    return PhpVariant(PHP_ALIASES.get(name, name))


def php_var(i, j, k):
    """Variable number of p_{i,j} (pigeon i, hole j) among k holes."""
    return (i - 1) * k + j


def php_parts(m, k):
    p = lambda i, j: php_var(i, j, k)
    pigeons = [Clause(p(i, j) for j in range(1, k + 1)) for i in range(1, m + 1)]
    holes = [Clause(p(i, j) for i in range(1, m + 1)) for j in range(1, k + 1)]
    functional = [Clause([-p(i, a), -p(i, b)]) for i in range(1, m + 1)
                  for a, b in itertools.combinations(range(1, k + 1), 2)]
    injective = [Clause([-p(a, j), -p(b, j)]) for j in range(1, k + 1)
                 for a, b in itertools.combinations(range(1, m + 1), 2)]
    return {"pigeons": pigeons, "holes": holes, "functional": functional, "injective": injective}


def php(variant="plain", m=3, k=2):
    variant = php_variant(variant)
    parts = php_parts(m, k)
    clauses = parts["pigeons"] + parts["injective"]
    if variant in (PhpVariant.functional, PhpVariant.onto_functional):
        clauses += parts["functional"]
    if variant in (PhpVariant.onto, PhpVariant.onto_functional):
        clauses += parts["holes"]
    return ClauseSet(clauses)


def php_names(m, k):
    return {php_var(i, j, k): f"p_{i}_{j}" for i in range(1, m + 1) for j in range(1, k + 1)}


def php_clause_count(variant, m, k):
    """Clause count from the component sizes (components are pairwise disjoint unless degenerate)."""
    variant = php_variant(variant)
    c = m + k * comb(m, 2)
    if variant in (PhpVariant.functional, PhpVariant.onto_functional):
        c += m * comb(k, 2)
    if variant in (PhpVariant.onto, PhpVariant.onto_functional):
        c += k
    return c


def php_satisfiable(variant, m, k):
    variant = php_variant(variant)
    if variant in (PhpVariant.plain, PhpVariant.functional):
        return m <= k
    if variant is PhpVariant.onto:
        return m <= k and (m > 0 or k == 0)
    return m == k


# extended pigeonhole


def ephp_variables(n):
    """Map (l, i, j) to variable numbers; level n+1 is the pigeonhole level."""
    table = {}
    for i in range(1, n + 2):
        for j in range(1, n + 1):
            table[(n + 1, i, j)] = php_var(i, j, n)
    nxt = n * (n + 1) + 1
    for level in range(n, 1, -1):
        for i in range(1, level + 1):
            for j in range(1, level):
                table[(level, i, j)] = nxt
                nxt += 1
    return table


def ephp_block(q, l, i, j):
    """The four clauses defining q^{l-1}_{i,j} from level l."""
    x = q[(l - 1, i, j)]
    a, b, c = q[(l, i, j)], q[(l, i, l - 1)], q[(l, l, j)]
    return [Clause([x, -a]), Clause([x, -b, -c]), Clause([-x, a, b]), Clause([-x, a, c])]


def ephp_blocks(n):
    """Extension blocks in the order they are added: levels from n+1 down to 3."""
    q = ephp_variables(n)
    out = []
    for l in range(n + 1, 2, -1):
        for i in range(1, l):
            for j in range(1, l - 1):
                out.append(((l, i, j), ephp_block(q, l, i, j)))
    return out


def ephp(n):
    if n < 1:
        raise ValueError("ephp needs n >= 1")
    clauses = list(php("plain", n + 1, n))
    for _, block in ephp_blocks(n):
        clauses += block
    return ClauseSet(clauses)


def ephp_names(n):
    names = {}
    for (l, i, j), v in ephp_variables(n).items():
        names[v] = f"p_{i}_{j}" if l == n + 1 else f"q_{l}_{i}_{j}"
    return names


# XOR constraints


@dataclass(frozen=True)
class XorClause:
    """The parity constraint: the XOR of the literals equals 0."""

    literals: frozenset

    def __init__(self, literals=()):
        lits = frozenset(literals)
        if len({abs(x) for x in lits}) != len(lits) or 0 in lits:
            raise ValueError("each variable may occur at most once in an XOR clause")
        object.__setattr__(self, "literals", lits)

    @property
    def variables(self):
        return sorted(abs(x) for x in self.literals)

    @property
    def target(self):
        """Required parity of the plain variables."""
        return sum(1 for x in self.literals if x < 0) % 2


def parity_clauses(variables, target):
    """All full clauses over the variables excluding assignments of the wrong parity."""
    variables = sorted(variables)
    out = []
    for vals in itertools.product([0, 1], repeat=len(variables)):
        if sum(vals) % 2 != target:
            out.append(Clause(-v if b else v for v, b in zip(variables, vals)))
    return out


def _direct(lits):
    X = XorClause(lits)
    return parity_clauses(X.variables, X.target)


def xor_encode(X, mode="direct"):
    """CNF of a system of XOR clauses; chained mode links long constraints through fresh variables."""
    X = [x if isinstance(x, XorClause) else XorClause(x) for x in X]
    if mode == "direct":
        return ClauseSet(c for x in X for c in _direct(x.literals))
    if mode != "chained":
        raise ValueError("mode must be direct or chained")
    used = {v for x in X for v in x.variables}
    fresh = itertools.count(max(used, default=0) + 1)
    clauses = []
    for x in X:
        if not x.literals:
            raise ValueError("chained mode needs non-empty XOR clauses")
        lits = sorted(x.literals, key=abs)
        if len(lits) <= 3:
            clauses += _direct(lits)
            continue
        t = next(fresh)
        clauses += _direct([lits[0], lits[1], t])
        for y in lits[2:-2]:
            t2 = next(fresh)
            clauses += _direct([t, y, t2])
            t = t2
        clauses += _direct([t, lits[-2], lits[-1]])
    return ClauseSet(clauses)


def two_xor_system(n):
    if n < 1:
        raise ValueError("n must be positive")
    vs = list(range(1, n + 1))
    return [XorClause(vs), XorClause(vs[:-1] + [-n])]


def two_xor(n, mode="chained"):
    return xor_encode(two_xor_system(n), mode)


def tseitin_cnf(G):
    """One variable per edge (edge i is variable i+1); per vertex the parity of its edges equals its charge."""
    clauses = []
    for idx, w in enumerate(G.vertices):
        incident = [i + 1 for i, (a, b) in enumerate(G.edges) if w in (a, b)]
        clauses += parity_clauses(incident, G.charge[idx])
    return ClauseSet(clauses)


def cycle_graph(length):
    if length < 2:
        raise ValueError("a cycle needs at least two vertices")
    return TseitinGraph(tuple(range(length)), tuple((i, (i + 1) % length) for i in range(length)))


def path_graph(length):
    return TseitinGraph(tuple(range(length + 1)), tuple((i, i + 1) for i in range(length)))


def complete_graph(size):
    return TseitinGraph(tuple(range(size)), tuple(itertools.combinations(range(size), 2)))


def full_clause_set(n):
    """A_n: all 2^n full clauses over 1..n."""
    return ClauseSet(parity_clauses(range(1, n + 1), 0) + parity_clauses(range(1, n + 1), 1))
