"""Hardness, depth, symmetric and asymmetric width, and the lift to all clause-sets."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from . import _bits
from .cnf import Clause, ClauseSet, PartialAssignment, apply, prime_implicates, is_satisfiable
from .reductions import hardness_bits
from .resolution import depth_search_bits, kres_saturate, sym_saturate


class MeasureKind(str, enum.Enum):
    hardness = "hardness"
    depth = "depth"
    sym_width = "sym_width"
    asym_width = "asym_width"
    semantic_space = "semantic_space"
    resolution_space = "resolution_space"
    tree_space = "tree_space"


ALIASES = {
    "hd": "hardness",
    "dep": "depth",
    "wid": "sym_width",
    "whd": "asym_width",
    "semspace": "semantic_space",
    "resspace": "resolution_space",
    "treespace": "tree_space",
}


def measure_kind(name):
    if isinstance(name, MeasureKind):
        return name
    return MeasureKind(ALIASES.get(name, name))


SPACE_KINDS = {MeasureKind.semantic_space, MeasureKind.resolution_space, MeasureKind.tree_space}


def minimum_value(kind):
    """Least value of a measure over unsatisfiable clause-sets."""
    return 1 if measure_kind(kind) in SPACE_KINDS else 0


@dataclass
class MeasureReport:
    kind: MeasureKind
    value: int
    witness: Any = None
    relativisation: frozenset | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self):
        out = {"kind": self.kind.value, "value": self.value}
        if self.relativisation is not None:
            out["relativisation"] = sorted(self.relativisation)
        if self.witness is not None:
            out["witness"] = self.witness
        out.update(self.extra)
        return out


# bit-level base measures on unsatisfiable inputs


def asym_width_bits(F, ev):
    if 0 in F:
        return 0
    k = 1
    while 0 not in kres_saturate(F, k, ev, reduce=True, stop_at_bottom=True):
        k += 1
    return k


def sym_width_bits(F, ev):
    if 0 in F:
        return 0
    k = 1
    while 0 not in sym_saturate(F, k, ev, stop_at_bottom=True):
        k += 1
    return k


def depth_bits(F, ev):
    return depth_search_bits(F, ev, {})


def _base_bits(kind):
    from . import space

    return {
        MeasureKind.hardness: lambda F, ev: hardness_bits(F, ev),
        MeasureKind.depth: depth_bits,
        MeasureKind.sym_width: sym_width_bits,
        MeasureKind.asym_width: asym_width_bits,
        MeasureKind.semantic_space: space.semantic_space_bits,
        MeasureKind.resolution_space: space.resolution_space_bits,
        MeasureKind.tree_space: space.tree_space_bits,
    }[kind]


def _unsat(F):
    F = ClauseSet(F)
    if is_satisfiable(F):
        raise ValueError("measure is defined on unsatisfiable clause-sets; use lift_measure")
    return F


def base_measure(kind, F):
    """The measure of an unsatisfiable clause-set."""
    kind = measure_kind(kind)
    F = _unsat(F)
    E, B = F.encoded()
    return _base_bits(kind)(B, E.even)


def hardness(F):
    return lift_measure(MeasureKind.hardness, F)


def depth(F):
    return lift_measure(MeasureKind.depth, F)


def sym_width(F):
    return lift_measure(MeasureKind.sym_width, F)


def asym_width(F):
    return lift_measure(MeasureKind.asym_width, F)


def lift_measure(kind, F, V=None):
    """Maximum of the base measure over the minimal unsatisfiable instantiations.

    The minimal partial assignments phi with phi * F unsatisfiable are exactly
    phi_C for the prime implicates C of F.  When V is given only those with
    var(C) inside V count.  With nothing to maximise over the measure's
    minimum is returned.
    """
    kind = measure_kind(kind)
    F = ClauseSet(F)
    if V is not None:
        V = frozenset(V)
        if not V <= F.variables:
            raise ValueError("relativisation set must lie inside var(F)")
    base = _base_bits(kind)
    E, B = F.encoded()
    ev = E.even
    best = None
    for c in _bits.prime_implicates(B, ev):
        if V is not None and not set(abs(x) for x in E.literals(c)) <= V:
            continue
        value = base(_bits.assign(B, _bits.comp(c, ev), ev), ev)
        if best is None or value > best:
            best = value
    return minimum_value(kind) if best is None else best


def lift_witness(kind, F, V=None):
    """(value, maximising prime implicate) in the sorted tie-break order."""
    kind = measure_kind(kind)
    F = ClauseSet(F)
    best = (minimum_value(kind), None)
    for C in prime_implicates(F).sorted():
        if V is not None and not C.variables <= frozenset(V):
            continue
        value = base_measure(kind, apply(PartialAssignment.falsifying(C), F))
        if best[1] is None or value > best[0]:
            best = (value, C)
    return best


def max_clause_length(F):
    return max((len(C) for C in F), default=0)


def substitute(F, x, y):
    """F with literal x replaced by y (and -x by -y); tautological clauses vanish."""
    out = []
    for C in ClauseSet(F):
        lits = set()
        for z in C:
            if z == x:
                lits.add(y)
            elif z == -x:
                lits.add(-y)
            else:
                lits.add(z)
        if any(-z in lits for z in lits):
            continue
        out.append(Clause(lits))
    return ClauseSet(out)
