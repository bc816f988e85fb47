"""Consistent sets of partial assignments and their existence deciders."""
from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass

from . import _bits
from .cnf import ClauseSet, PartialAssignment
from .reductions import hardness_bits
from .resolution import kres_saturate, sym_saturate


class ConsistencyKind(str, enum.Enum):
    k_consistent = "k_consistent"
    symmetric_k = "symmetric_k"
    weakly_k = "weakly_k"
    very_weakly_k = "very_weakly_k"


ALIASES = {"weakly": "weakly_k", "very_weakly": "very_weakly_k", "symmetric": "symmetric_k"}


def consistency_kind(name):
    if isinstance(name, ConsistencyKind):
        return name
    return ConsistencyKind(ALIASES.get(name, name))


@dataclass(frozen=True)
class AssignmentFamily:
    members: frozenset
    scope: frozenset

    @classmethod
    def of(cls, members, scope=None):
        members = frozenset(PartialAssignment(m) for m in members)
        if scope is None:
            scope = frozenset().union(*(m.variables for m in members)) if members else frozenset()
        return cls(members, frozenset(scope))

    def __len__(self):
        return len(self.members)

    def __contains__(self, phi):
        return PartialAssignment(phi) in self.members

    def to_json(self):
        rows = [m.to_json() for m in self.members]
        return sorted(rows, key=lambda r: (len(r), sorted(r.items())))


# bit-level helpers: an assignment is the set of its true literals over an Encoding


def all_assignments(n):
    """Every partial assignment over n encoded variables."""
    out = [0]
    for i in range(n):
        out = out + [a | (1 << (2 * i)) for a in out] + [a | (1 << (2 * i + 1)) for a in out]
    return out


def _subsets(a):
    lits = list(_bits.bits(a))
    for r in range(len(lits) + 1):
        for combo in itertools.combinations(lits, r):
            yield sum(combo)


def _down_closure(P):
    D = set()
    for a in P:
        if a not in D:
            D.update(_subsets(a))
    return D


def _falsifies_some(a, F, ev):
    return any(_bits.falsifies(a, c, ev) for c in F)


def _var_bits(n):
    return [1 << (2 * i) for i in range(n)]


def _minimal_violation(P, F, ev, n):
    if not P:
        return "family is empty"
    scope = _bits._even_mask(n) * 3
    for a in P:
        if a & ~scope:
            return "member uses variables outside var(F)"
        if _falsifies_some(a, F, ev):
            return f"member {a} falsifies a clause"
    return None


def _extension_violation(P, ev, n, k, both):
    D = _down_closure(P)
    vs = _var_bits(n)
    for a in P:
        vm = _bits.varmask(a, ev)
        free = [v for v in vs if not v & vm]
        if not free:
            continue
        for psi in _subsets(a):
            if psi.bit_count() >= k:
                continue
            for v in free:
                ok0 = (psi | (v << 1)) in D
                ok1 = (psi | v) in D
                if (ok0 and ok1) if both else (ok0 or ok1):
                    continue
                return f"no extension of {psi} on variable bit {v}"
    return None


def _very_weak_violation(P, ev, n, k):
    if 0 not in P:
        return "empty assignment is not a member"
    vs = _var_bits(n)
    for a in P:
        if a.bit_count() >= k:
            continue
        vm = _bits.varmask(a, ev)
        for v in vs:
            if v & vm:
                continue
            if (a | v) not in P and (a | (v << 1)) not in P:
                return f"no extension of {a} on variable bit {v}"
    return None


def hasse_covers(P):
    """Cover relation of the inclusion order on P: a -> list of covering elements."""
    elems = sorted(P, key=int.bit_count)
    up = {a: [b for b in elems if a != b and a & ~b == 0] for a in elems}
    covers = {}
    for a in elems:
        above = up[a]
        covers[a] = [b for b in above if not any(c != b and c & ~b == 0 for c in above)]
    return covers


def min_maximal_chain_length(P):
    """Least length (number of elements minus one) of a maximal chain."""
    covers = hasse_covers(P)
    below = {a: False for a in P}
    for a, bs in covers.items():
        for b in bs:
            below[b] = True
    minimal = [a for a in P if not below[a]]
    dist = {a: 0 for a in minimal}
    queue = deque(minimal)
    while queue:
        a = queue.popleft()
        if not covers[a]:
            return dist[a]
        for b in covers[a]:
            if b not in dist:
                dist[b] = dist[a] + 1
                queue.append(b)
    return -1


def _weak_violation(P, ev, n, k):
    if min_maximal_chain_length(P) < k:
        return "a maximal chain is shorter than k"
    vs = _var_bits(n)
    for a in P:
        if not any(b != a and a & ~b == 0 for b in P):
            continue
        vm = _bits.varmask(a, ev)
        for v in vs:
            if v & vm:
                continue
            for lit in (v, v << 1):
                t = a | lit
                if not any(t & ~b == 0 for b in P):
                    return f"no member extends {a} by variable bit {v}"
    return None


def family_violation_bits(kind, P, F, ev, n, k):
    kind = consistency_kind(kind)
    msg = _minimal_violation(P, F, ev, n)
    if msg:
        return msg
    if kind is ConsistencyKind.k_consistent:
        return _extension_violation(P, ev, n, k, both=True)
    if kind is ConsistencyKind.symmetric_k:
        return _extension_violation(P, ev, n, k, both=False)
    if kind is ConsistencyKind.very_weakly_k:
        return _very_weak_violation(P, ev, n, k)
    return _weak_violation(P, ev, n, k)


def _encode_family(P, F):
    F = ClauseSet(F)
    E, B = F.encoded()
    members = P.members if isinstance(P, AssignmentFamily) else frozenset(PartialAssignment(m) for m in P)
    bitsP = set()
    for m in members:
        if not m.variables <= F.variables:
            return E, B, None
        bitsP.add(E.clause(m))
    return E, B, frozenset(bitsP)


def family_violation(kind, P, F, k):
    """First violated condition as a message, or None if P passes."""
    E, B, bitsP = _encode_family(P, F)
    if bitsP is None:
        return "member uses variables outside var(F)"
    return family_violation_bits(kind, bitsP, B, E.even, E.n, k)


def check_family(kind, P, F, k):
    return family_violation(kind, P, F, k) is None


def _decode_family(E, P):
    return AssignmentFamily(frozenset(PartialAssignment(E.literals(a)) for a in P), frozenset(E.variables))


# constructions


def closure_family_bits(kind, F, ev, n, k):
    """Assignments over var(F) falsifying nothing in F nor in its k-resolution closure."""
    kind = consistency_kind(kind)
    if kind is ConsistencyKind.k_consistent:
        closure = kres_saturate(F, k, ev)
    elif kind is ConsistencyKind.symmetric_k:
        closure = sym_saturate(F, k, ev)
    else:
        raise ValueError("closure families exist for k_consistent and symmetric_k only")
    if 0 in closure:
        return None
    avoid = set(closure) | set(F)
    return frozenset(a for a in all_assignments(n) if not _falsifies_some(a, avoid, ev))


def _greatest_fixpoint(P, ev, n, k, both):
    vs = _var_bits(n)
    P = set(P)
    while P:
        D = _down_closure(P)
        bad = []
        for a in P:
            vm = _bits.varmask(a, ev)
            free = [v for v in vs if not v & vm]
            ok = True
            for psi in _subsets(a):
                if psi.bit_count() >= k:
                    continue
                for v in free:
                    ok0 = (psi | (v << 1)) in D
                    ok1 = (psi | v) in D
                    if not ((ok0 and ok1) if both else (ok0 or ok1)):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                bad.append(a)
        if not bad:
            break
        P.difference_update(bad)
    return frozenset(P)


def largest_family_bits(kind, F, ev, n, k):
    """Largest family of the kind, as the greatest fixed point of the extension condition.

    The extension condition is monotone in the family, so families are closed
    under union and repeatedly discarding violating members from all
    non-falsifying assignments converges to the largest one.
    """
    kind = consistency_kind(kind)
    if kind not in (ConsistencyKind.k_consistent, ConsistencyKind.symmetric_k):
        raise ValueError("largest families exist for k_consistent and symmetric_k only")
    start = [a for a in all_assignments(n) if not _falsifies_some(a, F, ev)]
    P = _greatest_fixpoint(start, ev, n, k, kind is ConsistencyKind.k_consistent)
    return P or None


def largest_family(kind, F, k):
    F = ClauseSet(F)
    E, B = F.encoded()
    P = largest_family_bits(kind, B, E.even, E.n, k)
    return None if P is None else _decode_family(E, P)


def closure_family(kind, F, k):
    F = ClauseSet(F)
    E, B = F.encoded()
    P = closure_family_bits(kind, B, E.even, E.n, k)
    return None if P is None else _decode_family(E, P)


def depth_levels(F, ev, d):
    """D_0 = F and D_{i+1} = D_i plus all resolvents of D_i, for i < d."""
    levels = [frozenset(F)]
    for _ in range(d):
        cur = levels[-1]
        new = set(cur)
        cl = sorted(cur)
        for i, a in enumerate(cl):
            for b in cl[i + 1:]:
                r = _bits.resolve(a, b, ev)
                if r is not None:
                    new.add(r)
        levels.append(frozenset(new))
    return levels


def very_weak_family_bits(F, ev, n, k):
    levels = depth_levels(F, ev, k)
    out = set()
    for a in all_assignments(n):
        j = a.bit_count()
        if j > k:
            continue
        if not _falsifies_some(a, levels[k - j], ev):
            out.add(a)
    return frozenset(out)


class _Saturator:
    def __init__(self, F, ev, n, order=None):
        self.F = F
        self.ev = ev
        self.bindings = [lit for i in range(n) for lit in (1 << (2 * i + 1), 1 << (2 * i))]
        if order is not None:
            self.bindings = [self.bindings[i] for i in order]
        self.memo = {}
        self.hd_memo = {}

    def hd(self, a):
        h = self.hd_memo.get(a)
        if h is None:
            G = _bits.assign(self.F, a, self.ev)
            h = self.hd_memo[a] = hardness_bits(G, self.ev, self.memo)
        return h

    def saturate(self, a):
        """Add bindings in fixed order while the hardness of the instance stays put."""
        h = self.hd(a)
        changed = True
        while changed:
            changed = False
            vm = _bits.varmask(a, self.ev)
            for lit in self.bindings:
                if _bits.varmask(lit, self.ev) & vm:
                    continue
                if self.hd(a | lit) == h:
                    a |= lit
                    changed = True
                    break
        return a


def weak_family_bits(F, ev, n, order=None):
    """Witness family for hardness: saturations generated from the saturated empty assignment.

    Every member is saturated, so each one-variable extension lowers the
    hardness by exactly one; members of hardness at least 2 get the saturation
    of each such extension as a further member.  `order` permutes the 2n
    bindings tried during saturation.
    """
    S = _Saturator(F, ev, n, order)
    root = S.saturate(0)
    if S.hd(root) == 0:
        return frozenset()
    P = {root}
    queue = [root]
    while queue:
        a = queue.pop()
        if S.hd(a) < 2:
            continue
        vm = _bits.varmask(a, ev)
        for lit in S.bindings:
            if _bits.varmask(lit, ev) & vm:
                continue
            b = S.saturate(a | lit)
            if b not in P:
                P.add(b)
                queue.append(b)
    return frozenset(P)


def construct_family_bits(kind, F, ev, n, k):
    kind = consistency_kind(kind)
    if kind in (ConsistencyKind.k_consistent, ConsistencyKind.symmetric_k):
        return largest_family_bits(kind, F, ev, n, k)
    if kind is ConsistencyKind.very_weakly_k:
        return very_weak_family_bits(F, ev, n, k)
    return weak_family_bits(F, ev, n)


def construct_family(kind, F, k):
    F = ClauseSet(F)
    E, B = F.encoded()
    P = construct_family_bits(kind, B, E.even, E.n, k)
    return None if P is None else _decode_family(E, P)


def exists_family_bits(kind, F, ev, n, k):
    P = construct_family_bits(kind, F, ev, n, k)
    if not P:
        return False
    return family_violation_bits(kind, P, F, ev, n, k) is None


def exists_family(kind, F, k):
    """Decide whether a family of the given kind exists, by building the witness and checking it."""
    F = ClauseSet(F)
    E, B = F.encoded()
    return exists_family_bits(kind, B, E.even, E.n, k)


def exists_family_by_enumeration(kind, F, k, max_vars=2):
    """Brute force over all families of assignments over var(F); tiny inputs only."""
    F = ClauseSet(F)
    E, B = F.encoded()
    if E.n > max_vars:
        raise ValueError("enumeration over families is limited to tiny inputs")
    pool = [a for a in all_assignments(E.n) if not _falsifies_some(a, B, E.even)]
    for r in range(1, len(pool) + 1):
        for combo in itertools.combinations(pool, r):
            if family_violation_bits(kind, frozenset(combo), B, E.even, E.n, k) is None:
                return True
    return False
