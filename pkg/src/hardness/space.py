"""Semantic, resolution and tree space by exhaustive configuration search."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from . import _bits
from ._bits import CapExceeded
from .cnf import Clause, ClauseSet, decode, entails, is_satisfiable
from .reductions import hardness_bits
from .resolution import NotResolvable, branching_refutation, hs_combine, resolve

SPACE_CAP = 8


class SearchFailed(RuntimeError):
    """No sequence was found up to the proven upper bound; indicates a bug."""


@dataclass
class SpaceConfiguration:
    clauses: ClauseSet
    origin: str = "initial"
    clause: Clause | None = None

    def to_json(self):
        out = {"origin": self.origin, "clauses": [C.sorted() for C in self.clauses.sorted()]}
        if self.clause is not None:
            out["clause"] = self.clause.sorted()
        return out


@dataclass
class SpaceTrace:
    kind: str
    bound: int
    sequence: list = field(default_factory=list)

    def to_json(self):
        return {"kind": self.kind, "bound": self.bound,
                "sequence": [s.to_json() for s in self.sequence]}


def _n_of(ev):
    return (ev.bit_length() + 1) // 2


def _lower_bound(F):
    return max(1, min(c.bit_count() for c in F) + 1) if F else 1


def _check_cap(n, cap):
    if cap is not None and n > cap:
        raise CapExceeded(f"{n} variables exceed the space-search cap of {cap}")


# semantic space


class _Semantic:
    def __init__(self, F, ev):
        self.F = sorted(F)
        self.ev = ev
        self.n = _n_of(ev)
        self.full = _bits.var_tables(self.n)[1]
        self.fals = {}
        self.primes = {}

    def table(self, c):
        t = self.fals.get(c)
        if t is None:
            t = self.fals[c] = _bits.falsified_table(c, self.n)
        return t

    def weakenings(self, f, rep, size):
        """Strongest conjunctions of `size` prime implicates of f, as (table, clauses)."""
        key = (f, size)
        hit = self.primes.get(key)
        if hit is not None:
            return hit
        P = sorted(_bits.prime_implicates(rep, self.ev))
        if len(P) <= size:
            out = [(f, tuple(P))]
        else:
            cand = {}
            for combo in combinations(P, size):
                g = self.full
                for c in combo:
                    g &= ~self.table(c)
                if g not in cand:
                    cand[g] = combo
            tables = sorted(cand, key=int.bit_count)
            keep = []
            for g in tables:
                if not any(h & ~g == 0 for h in keep):
                    keep.append(g)
            out = [(g, cand[g]) for g in keep]
        self.primes[key] = out
        return out

    def search(self, k):
        """Parent map ending in an unsatisfiable state, or None.

        Depth-first, strongest successor first.  A state is skipped when an
        already seen state is at least as strong, which is sound because the
        stronger state can mimic every move of the weaker one.
        """
        start = (self.full, ())
        parents = {start[0]: None}
        seen = [start[0]]
        stack = [start]
        while stack:
            f, rep = stack.pop()
            succ = []
            for g, gcl in self.weakenings(f, rep, k - 1):
                for c in self.F:
                    t = self.table(c)
                    if not g & t:
                        continue
                    h = g & ~t
                    if h == 0:
                        parents[0] = (f, gcl, c)
                        return parents
                    if h in parents or any(s & ~h == 0 for s in seen):
                        continue
                    seen.append(h)
                    parents[h] = (f, gcl, c)
                    succ.append((h, gcl + (c,)))
            succ.sort(key=lambda s: -s[0].bit_count())
            stack.extend(succ)
        return None


def _semantic_trace(parents, E, k):
    steps = []
    f = 0
    while parents[f] is not None:
        prev, gcl, c = parents[f]
        steps.append((gcl, c))
        f = prev
    steps.reverse()
    seq = [SpaceConfiguration(ClauseSet(), "initial")]
    for gcl, c in steps:
        G = decode(E, gcl)
        if G != seq[-1].clauses:
            seq.append(SpaceConfiguration(G, "inference"))
        C = Clause(E.literals(c))
        seq.append(SpaceConfiguration(ClauseSet(G | {C}), "axiom_download", C))
    return SpaceTrace("semantic", k, seq)


def _upper(F, ev):
    return hardness_bits(F, ev) + 1


def semantic_space_bits(F, ev, lower=True, trace=False, E=None):
    _check_cap(_n_of(ev), SPACE_CAP)
    if 0 in F:
        k = 1
        parents = {0: (_bits.var_tables(_n_of(ev))[1], (), 0), _bits.var_tables(_n_of(ev))[1]: None}
        return (k, _semantic_trace(parents, E, k)) if trace else k
    S = _Semantic(F, ev)
    top = _upper(F, ev)
    for k in range(_lower_bound(F) if lower else 1, top + 1):
        parents = S.search(k)
        if parents is not None:
            return (k, _semantic_trace(parents, E, k)) if trace else k
    raise SearchFailed("no semantic sequence within hardness + 1")


# resolution space


def _antichain_add(S, x):
    return frozenset([s for s in S if x & ~s != 0 or s == x] + [x])


def _resolvents(S, ev):
    out = []
    Sl = sorted(S)
    for i, a in enumerate(Sl):
        for b in Sl[i + 1:]:
            r = _bits.resolve(a, b, ev)
            if r is not None:
                out.append((r, a, b))
    return out


def _resolution_search(F, ev, k):
    """Depth-first search over antichain configurations; returns (parents, last, move) or None.

    Shorter new clauses are tried first.  Every reachable configuration is
    visited at most once, so an unsuccessful search is exhaustive.
    """
    axioms = sorted(F)
    start = frozenset()
    parents = {start: None}
    stack = [start]
    while stack:
        S = stack.pop()
        moves = {}
        for r, _, _ in _resolvents(S, ev):
            if r not in S:
                moves.setdefault(r, "resolvent")
        for a in axioms:
            if a not in S:
                moves.setdefault(a, "axiom_download")
        if 0 in moves:
            return parents, S, moves[0]
        succ = []
        for x in sorted(moves, key=lambda c: (c.bit_count(), c)):
            if any(s & ~x == 0 for s in S):
                continue
            T = _antichain_add(S, x)
            if len(T) <= k:
                succ.append((T, x))
            else:
                succ.extend((T - {y}, x) for y in sorted(T) if y != x)
        for U, x in reversed(succ):
            if U not in parents:
                parents[U] = (S, x, moves[x])
                stack.append(U)
    return None


def proof_sequence(R):
    """Resolution sequence replaying a tree refutation, larger Horton-Strahler subtree first.

    Clauses are reference counted, so a clause still needed later is kept
    when one of its copies is used up.  Returns (sequence, largest configuration).
    """
    hs = {}
    for node in R.nodes():
        if node.is_leaf:
            hs[id(node)] = 0
        else:
            hs[id(node)] = hs_combine(hs[id(node.left)], hs[id(node.right)])
    count = {}
    seq = [SpaceConfiguration(ClauseSet(), "initial")]

    def current():
        return ClauseSet(C for C, m in count.items() if m > 0)

    def emit(origin, C):
        conf = current()
        if conf != seq[-1].clauses:
            seq.append(SpaceConfiguration(conf, origin, C))

    def run(node):
        if node.is_leaf:
            count[node.clause] = count.get(node.clause, 0) + 1
            emit("axiom_download", node.clause)
            return
        a, b = node.left, node.right
        if hs[id(b)] > hs[id(a)]:
            a, b = b, a
        run(a)
        run(b)
        count[a.clause] -= 1
        count[b.clause] -= 1
        count[node.clause] = count.get(node.clause, 0) + 1
        emit("resolvent", node.clause)

    run(R)
    return seq, max(len(c.clauses) for c in seq)


def _tree_search(F, ev, k):
    """Depth-first search over antichain tree configurations; returns (parents, last, move) or None.

    A resolution step drops both parents.  Clauses subsumed by another member
    are dropped too, and new clauses subsumed by a member are not added; this
    never hurts, since a subsuming clause can stand in for the weaker one.
    """
    axioms = sorted(F)
    start = frozenset()
    parents = {start: None}
    stack = [start]
    while stack:
        S = stack.pop()
        succ = []
        for r, a, b in _resolvents(S, ev):
            if r == 0:
                return parents, S, "resolvent"
            rest = S - {a, b}
            if any(s & ~r == 0 for s in rest):
                continue
            succ.append((_antichain_add(rest, r), r, "resolvent"))
        for a in axioms:
            if a == 0:
                return parents, S, "axiom_download"
            if any(s & ~a == 0 for s in S):
                continue
            T = _antichain_add(S, a)
            if len(T) <= k:
                succ.append((T, a, "axiom_download"))
            else:
                succ.extend((T - {y}, a, "axiom_download") for y in sorted(T) if y != a)
        succ.sort(key=lambda t: (t[1].bit_count(), t[1]), reverse=True)
        for U, x, move in succ:
            if U not in parents:
                parents[U] = (S, x, move)
                stack.append(U)
    return None


def tree_sequence(R):
    """Tree sequence replaying a tree refutation, larger Horton-Strahler subtree first.

    Returns (sequence, largest configuration), or None when a clause would be
    needed twice at the same time, which a set of clauses cannot hold.
    """
    hs = {}
    for node in R.nodes():
        hs[id(node)] = 0 if node.is_leaf else hs_combine(hs[id(node.left)], hs[id(node.right)])
    held = set()
    seq = [SpaceConfiguration(ClauseSet(), "initial")]

    def run(node):
        if node.is_leaf:
            if node.clause in held:
                return False
            held.add(node.clause)
            seq.append(SpaceConfiguration(ClauseSet(held), "axiom_download", node.clause))
            return True
        a, b = node.left, node.right
        if hs[id(b)] > hs[id(a)]:
            a, b = b, a
        if not run(a) or not run(b):
            return False
        held.difference_update([a.clause, b.clause])
        if node.clause in held:
            return False
        held.add(node.clause)
        seq.append(SpaceConfiguration(ClauseSet(held), "resolvent", node.clause))
        return True

    if not run(R):
        return None
    return seq, max(len(c.clauses) for c in seq)


def _clause_trace(found, E, k, kind):
    parents, last, final_move = found
    steps = []
    S = last
    while parents[S] is not None:
        prev, x, move = parents[S]
        steps.append((prev, S, x, move))
        S = prev
    steps.reverse()
    steps.append((last, None, 0, final_move))
    seq = [SpaceConfiguration(ClauseSet(), "initial")]
    for prev, cur, x, move in steps:
        C = Clause(E.literals(x))
        if cur is None:
            cur = prev | {0} if move == "axiom_download" else frozenset([0])
        if move == "axiom_download" and cur - {x} != prev:
            seq.append(SpaceConfiguration(decode(E, cur - {x}), "removal"))
        seq.append(SpaceConfiguration(decode(E, cur), move, C))
    return SpaceTrace(kind, k, seq)


def resolution_space_bits(F, ev, lower=True, trace=False, E=None):
    """Least k with a complete resolution k-sequence.

    A sequence replaying an optimal tree refutation gives a checked witness
    for its own bound; smaller bounds are decided by exhaustive search.
    """
    _check_cap(_n_of(ev), SPACE_CAP)
    E = E or _bits.Encoding(range(1, _n_of(ev) + 1))
    G = decode(E, F)
    seq, top = proof_sequence(branching_refutation(G, "hardness"))
    witness = SpaceTrace("resolution", top, seq)
    msg = trace_violation(witness, G)
    if msg:
        raise SearchFailed(f"tree refutation replay is not a resolution sequence: {msg}")
    for k in range(_lower_bound(F) if lower else 1, top):
        found = _resolution_search(F, ev, k)
        if found is not None:
            return (k, _clause_trace(found, E, k, "resolution")) if trace else k
    return (top, witness) if trace else top


def tree_space_bits(F, ev, search=False, trace=False, E=None):
    """hardness + 1 by default; with search, the least k with a complete tree k-sequence.

    The search is independent of the hardness: a replayed optimal tree
    refutation is only used as a checked witness for its own bound.
    """
    if not search and not trace:
        return _upper(F, ev)
    _check_cap(_n_of(ev), SPACE_CAP)
    E = E or _bits.Encoding(range(1, _n_of(ev) + 1))
    G = decode(E, F)
    top, witness = None, None
    replay = tree_sequence(branching_refutation(G, "hardness"))
    if replay is not None:
        seq, top = replay
        witness = SpaceTrace("tree", top, seq)
        msg = trace_violation(witness, G)
        if msg:
            raise SearchFailed(f"tree refutation replay is not a tree sequence: {msg}")
    k = _lower_bound(F)
    while top is None or k < top:
        found = _tree_search(F, ev, k)
        if found is not None:
            return (k, _clause_trace(found, E, k, "tree")) if trace else k
        k += 1
        if k > 2 * _n_of(ev) + 2:
            raise SearchFailed("no tree sequence found")
    return (top, witness) if trace else top


# public API


def _prepare(F, cap):
    F = ClauseSet(F)
    if is_satisfiable(F):
        raise ValueError("space measures are defined on unsatisfiable clause-sets")
    E, B = F.encoded()
    _check_cap(E.n, cap)
    return F, E, B


def semantic_space(F, cap=SPACE_CAP, lower_bound=True):
    F, E, B = _prepare(F, cap)
    return semantic_space_bits(B, E.even, lower=lower_bound)


def semantic_space_trace(F, cap=SPACE_CAP):
    F, E, B = _prepare(F, cap)
    return semantic_space_bits(B, E.even, trace=True, E=E)[1]


def resolution_space(F, cap=SPACE_CAP, lower_bound=True):
    F, E, B = _prepare(F, cap)
    return resolution_space_bits(B, E.even, lower=lower_bound)


def resolution_space_trace(F, cap=SPACE_CAP):
    F, E, B = _prepare(F, cap)
    return resolution_space_bits(B, E.even, trace=True, E=E)[1]


def tree_space(F, search=False, cap=SPACE_CAP):
    """Tree space; hardness + 1 by default, or by explicit search."""
    F, E, B = _prepare(F, cap if search else None)
    return tree_space_bits(B, E.even, search=search)


def tree_space_trace(F, cap=SPACE_CAP):
    F, E, B = _prepare(F, cap)
    return tree_space_bits(B, E.even, trace=True, E=E)[1]


def trace_violation(trace, F):
    """First illegal step of a trace as a message, or None when it is a complete sequence."""
    F = ClauseSet(F)
    seq = trace.sequence
    if not seq or seq[0].clauses != ClauseSet():
        return "sequence must start with the empty clause-set"
    for i, conf in enumerate(seq):
        if len(conf.clauses) > trace.bound:
            return f"configuration {i} exceeds the bound {trace.bound}"
    for i in range(1, len(seq)):
        prev, cur = seq[i - 1].clauses, seq[i].clauses
        added = cur - prev
        download = len(added) == 1 and cur == prev | added and next(iter(added)) in F
        if download:
            continue
        if trace.kind == "semantic":
            if not entails(prev, cur):
                return f"step {i} is neither a download nor an inference"
            continue
        if len(added) > 1:
            return f"step {i} adds more than one clause"
        if not added:
            if cur <= prev:
                continue
            return f"step {i} is not a legal step"
        R = next(iter(added))
        ok = False
        for A in prev:
            for B in prev:
                try:
                    if resolve(A, B) != R:
                        continue
                except NotResolvable:
                    continue
                if trace.kind == "tree" and (A in cur or B in cur):
                    continue
                ok = True
        if not ok:
            return f"step {i} adds {R}, which is not a legal resolvent"
    last = seq[-1].clauses
    if trace.kind == "semantic":
        if is_satisfiable(last):
            return "final configuration is satisfiable"
    elif Clause() not in last:
        return "final configuration lacks the empty clause"
    return None
