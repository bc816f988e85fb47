"""Generalised unit-clause propagation r_k."""
from __future__ import annotations

from dataclasses import dataclass

from . import _bits
from .cnf import ClauseSet, PartialAssignment, decode, BOTTOM


@dataclass(frozen=True)
class ReductionResult:
    reduced: ClauseSet
    forced: PartialAssignment
    refuted: bool


def _probe_literals(F, ev):
    lits = _bits.literals_of(F)
    lits |= _bits.comp(lits, ev)
    return list(_bits.bits(lits))


def rk_bits(F, k, ev, memo=None):
    """Fixed point of r_k on a bit-encoded clause-set: (reduced, forced bits)."""
    if memo is None:
        memo = {}
    key = (F, k)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if 0 in F:
        out = (frozenset([0]), 0)
    elif k == 0:
        out = (F, 0)
    elif k == 1:
        G, forced, refuted = _bits.unit_propagate(F, ev)
        out = (G, forced)
    else:
        G, forced = F, 0
        changed = True
        while changed and 0 not in G:
            changed = False
            for x in _probe_literals(G, ev):
                H, _ = rk_bits(_bits.assign(G, _bits.comp(x, ev), ev), k - 1, ev, memo)
                if 0 in H:
                    G = _bits.assign(G, x, ev)
                    forced |= x
                    changed = True
                    break
        if 0 in G:
            G = frozenset([0])
        out = (G, forced)
    memo[key] = out
    return out


def refutes(F, k, ev, memo=None):
    return 0 in rk_bits(F, k, ev, memo)[0]


def hardness_bits(F, ev, memo=None):
    """Least k with r_k refuting F; F must be unsatisfiable."""
    if memo is None:
        memo = {}
    k = 0
    while not refutes(F, k, ev, memo):
        k += 1
    return k


def _result(F, pair, E):
    G, forced = pair
    refuted = 0 in G
    reduced = ClauseSet([BOTTOM]) if refuted else decode(E, G)
    return ReductionResult(reduced, PartialAssignment(E.literals(forced)), refuted)


def rk(F, k):
    if k < 0:
        raise ValueError("k must be nonnegative")
    F = ClauseSet(F)
    E, B = F.encoded()
    return _result(F, rk_bits(B, k, E.even), E)


def r1(F):
    return rk(F, 1)
