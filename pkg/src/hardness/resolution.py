"""Resolution proofs, input resolution, k-resolution closures and tree-size search."""
from __future__ import annotations

import re

from . import _bits
from ._bits import CapExceeded
from .cnf import Clause, ClauseSet, decode
from .reductions import refutes

CLOSURE_CAP = 10


class NotResolvable(ValueError):
    pass


class ProofError(ValueError):
    pass


def resolve(C, D):
    C, D = Clause(C), Clause(D)
    clash = [x for x in C if -x in D]
    if len(clash) != 1:
        raise NotResolvable(f"{C} and {D} clash in {len(clash)} variables")
    x = clash[0]
    return Clause((C | D) - {x, -x})


class ResolutionProof:
    """A binary resolution tree; leaves are premises, inner nodes resolvents."""

    __slots__ = ("clause", "left", "right")

    def __init__(self, clause, left=None, right=None):
        if (left is None) != (right is None):
            raise ValueError("inner nodes need exactly two children")
        self.clause = Clause(clause)
        self.left = left
        self.right = right

    @classmethod
    def derive(cls, left, right):
        return cls(resolve(left.clause, right.clause), left, right)

    @property
    def is_leaf(self):
        return self.left is None

    @property
    def conclusion(self):
        return self.clause

    def nodes(self):
        """Distinct nodes in post-order (shared subproofs listed once)."""
        seen = set()
        out = []
        stack = [(self, False)]
        while stack:
            node, done = stack.pop()
            if id(node) in seen:
                continue
            if done or node.is_leaf:
                seen.add(id(node))
                out.append(node)
            else:
                stack.append((node, True))
                stack.append((node.right, False))
                stack.append((node.left, False))
        return out

    @property
    def premises(self):
        return ClauseSet(n.clause for n in self.nodes() if n.is_leaf)

    def inner_clauses(self):
        return [n.clause for n in self.nodes() if not n.is_leaf]

    def leaf_count(self):
        memo = {}
        for n in self.nodes():
            memo[id(n)] = 1 if n.is_leaf else memo[id(n.left)] + memo[id(n.right)]
        return memo[id(self)]

    def height(self):
        memo = {}
        for n in self.nodes():
            memo[id(n)] = 0 if n.is_leaf else 1 + max(memo[id(n.left)], memo[id(n.right)])
        return memo[id(self)]

    def to_text(self):
        ids = {}
        lines = []
        for i, n in enumerate(self.nodes(), 1):
            ids[id(n)] = i
            lits = " ".join(str(x) for x in n.clause.sorted())
            if n.is_leaf:
                lines.append(f"{i}: {lits} [axiom]")
            else:
                lines.append(f"{i}: {lits} [from {ids[id(n.left)]},{ids[id(n.right)]}]")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        nodes = {}
        last = None
        pat = re.compile(r"^\s*(\d+)\s*:\s*([-\d\s]*)\[(axiom|from\s+(\d+)\s*,\s*(\d+))\]\s*$")
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            m = pat.match(line)
            if not m:
                raise ProofError(f"line {lineno}: cannot parse {line!r}")
            i = int(m.group(1))
            lits = [int(t) for t in m.group(2).split()]
            if m.group(3) == "axiom":
                node = cls(lits)
            else:
                a, b = int(m.group(4)), int(m.group(5))
                if a not in nodes or b not in nodes:
                    raise ProofError(f"line {lineno}: unknown parent")
                node = cls(lits, nodes[a], nodes[b])
            nodes[i] = node
            last = node
        if last is None:
            raise ProofError("empty proof")
        return last


def proof_violation(R, F, C):
    """First violated condition of check_proof as a message, or None."""
    F = ClauseSet(F)
    for n in R.nodes():
        if n.is_leaf:
            if n.clause not in F:
                return f"premise {n.clause} not in the clause-set"
        else:
            try:
                r = resolve(n.left.clause, n.right.clause)
            except NotResolvable as e:
                return str(e)
            if r != n.clause:
                return f"node {n.clause} is not the resolvent {r}"
    if R.clause != Clause(C):
        return f"conclusion {R.clause} differs from {Clause(C)}"
    return None


def check_proof(R, F, C):
    return proof_violation(R, F, C) is None


def horton_strahler(R):
    memo = {}
    for n in R.nodes():
        if n.is_leaf:
            memo[id(n)] = 0
        else:
            a, b = memo[id(n.left)], memo[id(n.right)]
            memo[id(n)] = max(a, b) if a != b else a + 1
    return memo[id(R)]


def hs_combine(a, b):
    return max(a, b) if a != b else a + 1


# input resolution and IRES-TOP


def input_derivable(F, C):
    F = ClauseSet(F)
    C = Clause(C)
    E, B = F.encoded(F.variables | C.variables)
    a = _bits.comp(E.clause(C), E.even)
    return refutes(_bits.assign(B, a, E.even), 1, E.even)


def ires_top_bits(F, c, ev):
    """Input refutation with top clause c, side clauses from F minus c."""
    if c == 0:
        return True
    side = [d for d in F if d != c]
    seen = {c}
    stack = [c]
    while stack:
        t = stack.pop()
        for d in side:
            r = _bits.resolve(t, d, ev)
            if r is None or r in seen:
                continue
            if r == 0:
                return True
            seen.add(r)
            stack.append(r)
    return False


def ires_top(F, C):
    F = ClauseSet(F)
    C = Clause(C)
    E, B = F.encoded(F.variables | C.variables)
    return ires_top_bits(B, E.clause(C), E.even)


# k-resolution


def _check_closure_cap(n, cap):
    if cap is not None and n > cap:
        raise CapExceeded(f"{n} variables exceed the closure cap of {cap}")


def kres_saturate(F, k, ev, reduce=False, stop_at_bottom=False):
    """Closure under resolution steps with a parent of length <= k."""
    S = set(_bits.subsumption_reduce(F) if reduce else F)
    queue = sorted(S, key=lambda c: (c.bit_count(), c))
    processed = []
    while queue:
        c = queue.pop()
        if c not in S:
            continue
        short = c.bit_count() <= k
        for d in processed:
            if not short and d.bit_count() > k:
                continue
            if reduce and d not in S:
                continue
            r = _bits.resolve(c, d, ev)
            if r is None or r in S:
                continue
            if reduce:
                if any(s & ~r == 0 for s in S):
                    continue
                for s in [s for s in S if r & ~s == 0]:
                    S.discard(s)
            S.add(r)
            if r == 0 and stop_at_bottom:
                return frozenset(S)
            queue.append(r)
        if c in S:
            processed.append(c)
    return frozenset(S)


def sym_saturate(F, k, ev, stop_at_bottom=False):
    """Subsumption-reduced closure where axioms, parents and resolvents have length <= k."""
    S = set(_bits.subsumption_reduce([c for c in F if c.bit_count() <= k]))
    queue = sorted(S, key=lambda c: (c.bit_count(), c))
    processed = []
    while queue:
        c = queue.pop()
        if c not in S:
            continue
        for d in processed:
            if d not in S:
                continue
            r = _bits.resolve(c, d, ev)
            if r is None or r.bit_count() > k or r in S:
                continue
            if any(s & ~r == 0 for s in S):
                continue
            for s in [s for s in S if r & ~s == 0]:
                S.discard(s)
            S.add(r)
            if r == 0 and stop_at_bottom:
                return frozenset(S)
            queue.append(r)
        if c in S:
            processed.append(c)
    return frozenset(S)


def kres_closure(F, k, cap=CLOSURE_CAP):
    F = ClauseSet(F)
    _check_closure_cap(F.n, cap)
    E, B = F.encoded()
    return decode(E, kres_saturate(B, k, E.even))


def via_input_bits(F, k, ev, universe):
    Fp = set(c for c in F if c.bit_count() <= k)
    long = [d for d in F if d.bit_count() > k]
    changed = True
    while changed:
        changed = False
        for c in universe:
            if c in Fp:
                continue
            a = _bits.comp(c, ev)
            base = _bits.assign(frozenset(Fp), a, ev)
            if refutes(base, 1, ev):
                Fp.add(c)
                changed = True
                continue
            for d in long:
                if d & a:
                    continue
                top = d & ~_bits.comp(a, ev)
                if ires_top_bits(base | {top}, top, ev):
                    Fp.add(c)
                    changed = True
                    break
    return frozenset(Fp)


def kres_closure_via_input(F, k, cap=CLOSURE_CAP):
    F = ClauseSet(F)
    _check_closure_cap(F.n, cap)
    E, B = F.encoded()
    return decode(E, via_input_bits(B, k, E.even, _bits.clause_universe(E.n, k)))


# branching trees


def _split_vars(F, ev):
    return list(_bits.bits(_bits.varmask(_bits.literals_of(F), ev)))


def optimal_tree_size_bits(F, ev, memo):
    if 0 in F:
        return 1
    hit = memo.get(F)
    if hit is not None:
        return hit
    best = None
    for v in _split_vars(F, ev):
        a = optimal_tree_size_bits(_bits.assign(F, v << 1, ev), ev, memo)
        if best is not None and a >= best:
            continue
        b = optimal_tree_size_bits(_bits.assign(F, v, ev), ev, memo)
        if best is None or a + b < best:
            best = a + b
    if best is None:
        raise ValueError("clause-set is satisfiable")
    memo[F] = best
    return best


def optimal_tree_size(F):
    """Fewest leaves of a tree refutation, searched over branching trees.

    Branching trees correspond to regular tree refutations, and regular tree
    refutations are no larger than arbitrary ones, so the minimum is exact.
    """
    F = ClauseSet(F)
    E, B = F.encoded()
    return optimal_tree_size_bits(B, E.even, {})


def hs_search_bits(F, ev, memo):
    """Least Horton-Strahler number over branching trees (tree-hardness oracle)."""
    if 0 in F:
        return 0
    hit = memo.get(F)
    if hit is not None:
        return hit
    best = None
    for v in _split_vars(F, ev):
        a = hs_search_bits(_bits.assign(F, v << 1, ev), ev, memo)
        b = hs_search_bits(_bits.assign(F, v, ev), ev, memo)
        h = hs_combine(a, b)
        if best is None or h < best:
            best = h
    if best is None:
        raise ValueError("clause-set is satisfiable")
    memo[F] = best
    return best


def depth_search_bits(F, ev, memo):
    if 0 in F:
        return 0
    hit = memo.get(F)
    if hit is not None:
        return hit
    best = None
    for v in _split_vars(F, ev):
        a = depth_search_bits(_bits.assign(F, v << 1, ev), ev, memo)
        if best is not None and a >= best:
            continue
        b = depth_search_bits(_bits.assign(F, v, ev), ev, memo)
        h = max(a, b)
        if best is None or h < best:
            best = h
    if best is None:
        raise ValueError("clause-set is satisfiable")
    memo[F] = best + 1
    return best + 1


_OBJECTIVES = {
    "hardness": hs_search_bits,
    "depth": depth_search_bits,
    "size": optimal_tree_size_bits,
}


def branching_refutation(F, objective="hardness"):
    """A tree refutation read off an optimal branching tree.

    The objective picks which branching measure the splitting variables
    minimise; the resulting proof attains that value.
    """
    F = ClauseSet(F)
    E, B = F.encoded()
    ev = E.even
    score = _OBJECTIVES[objective]
    memo = {}
    score(B, ev, memo)
    leaves = {}

    def leaf(c):
        node = leaves.get(c)
        if node is None:
            node = leaves[c] = ResolutionProof(E.literals(c))
        return node

    def build(G, path):
        if 0 in G:
            for c in sorted(B):
                if _bits.falsifies(path, c, ev):
                    return leaf(c), c
            raise AssertionError("no falsified clause at a leaf")
        best = None
        for v in _split_vars(G, ev):
            a = score(_bits.assign(G, v << 1, ev), ev, memo)
            b = score(_bits.assign(G, v, ev), ev, memo)
            if objective == "hardness":
                h = hs_combine(a, b)
            elif objective == "depth":
                h = max(a, b) + 1
            else:
                h = a + b
            if best is None or h < best[0]:
                best = (h, v)
        v = best[1]
        p0, c0 = build(_bits.assign(G, v << 1, ev), path | (v << 1))
        if not c0 & v:
            return p0, c0
        p1, c1 = build(_bits.assign(G, v, ev), path | v)
        if not c1 & (v << 1):
            return p1, c1
        r = _bits.resolve(c0, c1, ev)
        return ResolutionProof(E.literals(r), p0, p1), r

    proof, c = build(B, 0)
    return proof


def hardness_by_search(F):
    F = ClauseSet(F)
    E, B = F.encoded()
    return hs_search_bits(B, E.even, {})


def depth_by_search(F):
    F = ClauseSet(F)
    E, B = F.encoded()
    return depth_search_bits(B, E.even, {})
