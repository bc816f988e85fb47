"""Blocked clauses, definitional extensions, and the extension read off a refutation."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cnf import BOTTOM, Clause, ClauseSet, prime_implicates
from .resolution import proof_violation

ARITY_CAP = 6


class FreshnessError(ValueError):
    pass


def is_blocked_for(C, x, F):
    """C cannot be resolved on x with any clause of F."""
    C = Clause(C)
    if x not in C:
        raise ValueError(f"literal {x} is not in the clause {C}")
    for D in F:
        if -x in D and sum(1 for y in C if -y in D) < 2:
            return False
    return True


def is_blocked(C, x, F):
    return is_blocked_for(C, x, F)


def blocking_literal(C, F):
    """A literal of C for which C is blocked w.r.t. F, or None."""
    C = Clause(C)
    for x in C.sorted():
        if is_blocked_for(C, x, F):
            return x
    return None


def is_blocked_clause(C, F):
    return blocking_literal(C, F) is not None


def eliminate_blocked(F, length=None):
    """Remove blocked clauses one at a time, in sorted order, until none is left.

    With `length` given only clauses of that length are candidates for removal.
    """
    cur = set(ClauseSet(F))
    while True:
        for C in ClauseSet(cur).sorted():
            if length is not None and len(C) != length:
                continue
            if is_blocked_clause(C, cur):
                cur.discard(C)
                break
        else:
            return ClauseSet(cur)


def addable_in_order(F, clauses):
    """Each clause is blocked w.r.t. the current set when added in the given order."""
    cur = set(ClauseSet(F))
    for C in clauses:
        if not is_blocked_clause(C, cur):
            return False
        cur.add(Clause(C))
    return True


def addable_in_any_order(F, clauses):
    clauses = [Clause(C) for C in clauses]
    return all(addable_in_order(F, order) for order in itertools.permutations(clauses))


@dataclass(frozen=True)
class ExtensionStep:
    """x <-> f for a fresh variable x; f is a truth table over `inputs`.

    Entry t of `table` is the value of f when input i has value bit i of t.
    """

    new_variable: int
    inputs: tuple
    table: tuple
    emitted_clauses: ClauseSet

    @classmethod
    def from_table(cls, x, inputs, table):
        inputs = tuple(inputs)
        table = tuple(int(bool(b)) for b in table)
        if len(inputs) > ARITY_CAP:
            raise ValueError(f"definitions are limited to {ARITY_CAP} inputs")
        if len(set(inputs)) != len(inputs) or any(v <= 0 for v in inputs):
            raise ValueError("inputs must be distinct positive variables")
        if len(table) != 1 << len(inputs):
            raise ValueError("truth table size does not match the inputs")
        if x <= 0 or x in inputs:
            raise FreshnessError("the new variable must be a fresh positive variable")
        clauses = []
        for t, val in enumerate(table):
            block = [-v if t >> i & 1 else v for i, v in enumerate(inputs)]
            clauses.append(Clause(block + ([x] if val else [-x])))
        return cls(x, inputs, table, prime_implicates(ClauseSet(clauses)))

    @classmethod
    def from_function(cls, x, inputs, f):
        inputs = tuple(inputs)
        table = [f(*(t >> i & 1 for i in range(len(inputs)))) for t in range(1 << len(inputs))]
        return cls.from_table(x, inputs, table)

    @classmethod
    def restricted(cls, x, a, b):
        """x <-> (a or b) for literals a, b on distinct variables."""
        if abs(a) == abs(b):
            raise ValueError("a and b must be on different variables")
        inputs = (abs(a), abs(b))

        def lit(v, y):
            return v if y > 0 else 1 - v

        return cls.from_function(x, inputs, lambda u, w: lit(u, a) | lit(w, b))

    @property
    def variables(self):
        return frozenset(self.inputs)


def extend(F, step):
    F = ClauseSet(F)
    V = F.variables
    if step.new_variable in V:
        raise FreshnessError(f"variable {step.new_variable} already occurs")
    if not step.variables <= V:
        raise FreshnessError("the definition uses variables outside the clause-set")
    return ClauseSet(F | step.emitted_clauses)


def definition_clauses(e, C):
    """Prime implicates of e <-> C for a non-empty clause C."""
    C = Clause(C)
    return [Clause(set(C) | {-e})] + [Clause([e, -y]) for y in C.sorted()]


def extension_from_refutation(F, R):
    """F plus definitions e_C <-> C for every inner clause of R not in F.

    Returns (extended clause-set, {clause: e_C}).
    """
    F = ClauseSet(F)
    msg = proof_violation(R, F, BOTTOM)
    if msg:
        raise ValueError(f"not a refutation of the clause-set: {msg}")
    nxt = max(F.variables, default=0) + 1
    names = {}
    out = set(F)
    for C in R.inner_clauses():
        if C in F or not C or C in names:
            continue
        names[C] = nxt
        out.update(definition_clauses(nxt, C))
        nxt += 1
    return ClauseSet(out), names
