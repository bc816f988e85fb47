"""Prover-Delayer games: exact values, optimal strategies and an interactive mode."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from . import _bits
from ._bits import CapExceeded
from .cnf import Clause, ClauseSet, PartialAssignment, apply, prime_implicates

GAME_CAP = 8


@dataclass(frozen=True)
class GameState:
    assignment: PartialAssignment
    turn: str
    prover_moves: int = 0
    max_prover_breadth: int = 0


class _Board:
    """Assignments over var(F) as literal bitmasks, with falsification flags."""

    def __init__(self, F, cap=GAME_CAP):
        F = ClauseSet(F)
        if cap is not None and F.n > cap:
            raise CapExceeded(f"{F.n} variables exceed the game cap of {cap}")
        self.F = F
        self.E, self.B = F.encoded()
        self.ev = self.E.even
        self.n = self.E.n
        self.lits = [1 << j for j in range(2 * self.n)]
        self._fals = {}
        self._sat = {}
        self._sup = {}

    def falsified(self, a):
        r = self._fals.get(a)
        if r is None:
            r = self._fals[a] = any(_bits.falsifies(a, c, self.ev) for c in self.B)
        return r

    def satisfied(self, a):
        """a * F is the empty clause-set."""
        return all(c & a for c in self.B)

    def satisfiable(self, a):
        r = self._sat.get(a)
        if r is None:
            r = self._sat[a] = _bits.satisfiable(_bits.assign(self.B, a, self.ev), self.ev)
        return r

    def free_vars(self, a):
        vm = _bits.varmask(a, self.ev)
        return [1 << (2 * i) for i in range(self.n) if not (1 << (2 * i)) & vm]

    def supersets(self, a):
        r = self._sup.get(a)
        if r is None:
            out = [a]
            for v in self.free_vars(a):
                out = out + [b | v for b in out] + [b | (v << 1) for b in out]
            r = self._sup[a] = out
        return r

    def bindings(self, a):
        return [lit for v in self.free_vars(a) for lit in (v, v << 1)]

    def decode(self, a):
        return PartialAssignment(self.E.literals(a))

    def encode(self, phi):
        return self.E.clause(phi)


def _subsets_upto(a, size):
    lits = list(_bits.bits(a))
    for r in range(min(size, len(lits)) + 1):
        for combo in itertools.combinations(lits, r):
            yield sum(combo)


# hardness game


class HdGame:
    """Minimax tables for the hardness game.

    Delayer extends the assignment arbitrarily; Prover binds one new variable,
    or, when the instantiated clause-set is satisfiable, jumps to a satisfying
    extension.  Falsifying a clause ends the game with one point per Prover
    binding; satisfying all clauses ends it with none.
    """

    def __init__(self, F, cap=GAME_CAP):
        self.board = _Board(F, cap)
        self.dmemo = {}
        self.pmemo = {}

    def ended(self, a, count):
        b = self.board
        if b.falsified(a):
            return count
        if b.satisfied(a):
            return 0
        return None

    def delayer_value(self, a, count):
        key = (a, count)
        hit = self.dmemo.get(key)
        if hit is not None:
            return hit
        best = None
        for t in self.board.supersets(a):
            end = self.ended(t, count)
            v = end if end is not None else self.prover_value(t, count)
            if best is None or v > best:
                best = v
        self.dmemo[key] = best
        return best

    def prover_value(self, a, count):
        key = (a, count)
        hit = self.pmemo.get(key)
        if hit is not None:
            return hit
        if self.board.satisfiable(a):
            best = 0
        else:
            best = None
            for lit in self.board.bindings(a):
                t = a | lit
                end = self.ended(t, count + 1)
                v = end if end is not None else self.delayer_value(t, count + 1)
                if best is None or v < best:
                    best = v
        self.pmemo[key] = best
        return best

    def value(self):
        end = self.ended(0, 0)
        return end if end is not None else self.delayer_value(0, 0)

    def best_delayer_move(self, a, count):
        best = None
        for t in self.board.supersets(a):
            end = self.ended(t, count)
            v = end if end is not None else self.prover_value(t, count)
            if best is None or v > best[0]:
                best = (v, t)
        return best[1]

    def best_prover_move(self, a, count):
        """('jump', model) or ('bind', literal bit)."""
        b = self.board
        if b.satisfiable(a):
            m = _bits.find_model(_bits.assign(b.B, a, b.ev), b.ev)
            return "jump", a | m
        best = None
        for lit in b.bindings(a):
            t = a | lit
            end = self.ended(t, count + 1)
            v = end if end is not None else self.delayer_value(t, count + 1)
            if best is None or v < best[0]:
                best = (v, lit)
        return "bind", best[1]


def hd_game_value(F, cap=GAME_CAP):
    return HdGame(F, cap).value()


# asymmetric width game


class WhdGame:
    """Attractor computation for the game with forgetting.

    For a threshold k Prover may only pick assignments with at most k
    variables.  A Delayer position wins for Prover when every extension either
    falsifies a clause or leaves Prover a pick inside the winning region; the
    least fixed point makes every Prover win finite.  The value is the least k
    for which the empty assignment wins for Prover.
    """

    def __init__(self, F, cap=GAME_CAP):
        self.board = _Board(F, cap)
        self.regions = {}

    def prover_choices(self, a, k):
        b = self.board
        out = []
        free = b.bindings(a)
        for psi in _subsets_upto(a, k - 1):
            for lit in free:
                out.append(psi | lit)
        return out

    def region(self, k):
        """Winning Delayer positions for Prover at threshold k, with their rank."""
        hit = self.regions.get(k)
        if hit is not None:
            return hit
        b = self.board
        positions = b.supersets(0)
        rank = {}
        pwin = {}
        level = 0
        changed = True
        while changed:
            changed = False
            new = []
            for a in positions:
                if a in rank:
                    continue
                ok = True
                for t in b.supersets(a):
                    if b.falsified(t):
                        continue
                    w = pwin.get(t)
                    if not w:
                        w = any(c in rank for c in self.prover_choices(t, k))
                        if w:
                            pwin[t] = True
                    if not w:
                        ok = False
                        break
                if ok:
                    new.append(a)
            for a in new:
                rank[a] = level
                changed = True
            level += 1
        self.regions[k] = rank
        return rank

    def value(self):
        for k in range(self.board.n + 1):
            if 0 in self.region(k):
                return k
        raise ValueError("clause-set is satisfiable")

    def best_prover_move(self, a, k):
        rank = self.region(k)
        best = None
        for c in self.prover_choices(a, k):
            r = rank.get(c)
            if r is not None and (best is None or r < best[0]):
                best = (r, c)
        if best is None:
            # outside the winning region: pick anything legal of least size
            cands = self.prover_choices(a, self.board.n)
            return min(cands, key=lambda c: (c.bit_count(), c))
        return best[1]

    def best_delayer_move(self, a, k):
        """An extension keeping Prover outside its threshold-k winning region."""
        b = self.board
        rank = self.region(k)
        for t in b.supersets(a):
            if b.falsified(t):
                continue
            if not any(c in rank for c in self.prover_choices(t, k)):
                return t
        return a


def _lifted(F, cap, value):
    """value(F) on unsatisfiable input; otherwise Delayer opens with a minimal unsatisfiable instantiation."""
    F = ClauseSet(F)
    if cap is not None and F.n > cap:
        raise CapExceeded(f"{F.n} variables exceed the game cap of {cap}")
    if not _bits.satisfiable(*_encoded(F)):
        return value(F)
    best = 0
    for C in prime_implicates(F):
        best = max(best, value(apply(PartialAssignment.falsifying(C), F)))
    return best


def whd_game_value(F, cap=GAME_CAP):
    return _lifted(F, cap, lambda G: WhdGame(G, cap).value())


def _encoded(F):
    E, B = F.encoded()
    return B, E.even


def restricted_whd_game_value(F, score="rounds", cap=GAME_CAP):
    """The forgetting game where each Prover pick must be larger than the previous one.

    With score="rounds" the score is the number of Prover moves, which makes
    the game equivalent to the hardness game.  With score="breadth" the score
    is the largest pick, as in the unrestricted forgetting game; Delayer's own
    bindings then count too, and the value can exceed the hardness.
    """
    if score not in ("rounds", "breadth"):
        raise ValueError("score must be rounds or breadth")
    return _lifted(F, cap, lambda G: _restricted_value(G, score, cap))


def _restricted_value(F, score, cap):
    board = _Board(F, cap)
    memo = {}

    def delayer(a, bound):
        key = (a, bound)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = None
        for t in board.supersets(a):
            if board.falsified(t):
                v = bound if score == "breadth" else 0
            else:
                v = None
                free = board.bindings(t)
                for psi in _subsets_upto(t, board.n):
                    if psi.bit_count() + 1 <= bound:
                        continue
                    for lit in free:
                        c = psi | lit
                        w = delayer(c, c.bit_count())
                        if score == "rounds":
                            w += 1
                        if v is None or w < v:
                            v = w
            if best is None or v > best:
                best = v
        memo[key] = best
        return best

    if board.falsified(0):
        return 0
    return delayer(0, 0)


# Tseitin graph game


class DisconnectedGraph(ValueError):
    pass


@dataclass(frozen=True)
class TseitinGraph:
    """A connected loop-free multigraph; edge i (from 0) becomes variable i + 1."""

    vertices: tuple
    edges: tuple
    charge: tuple = ()

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if not vs:
            raise ValueError("a Tseitin graph needs at least one vertex")
        for u, w in self.edges:
            if u == w:
                raise ValueError("loops are not allowed")
            if u not in vs or w not in vs:
                raise ValueError("edge endpoint is not a vertex")
        if not self.charge:
            object.__setattr__(self, "charge", tuple(1 if i == 0 else 0 for i in range(len(vs))))
        if len(self.charge) != len(vs):
            raise ValueError("one charge per vertex")
        if len(_components(frozenset(vs), frozenset(range(len(self.edges))), self.edges)) != 1:
            raise DisconnectedGraph("Tseitin graphs must be connected")

    @property
    def odd(self):
        return sum(self.charge) % 2 == 1


def _components(vs, eids, edges):
    adj = {v: [] for v in vs}
    for i in eids:
        u, w = edges[i]
        adj[u].append(w)
        adj[w].append(u)
    seen = set()
    comps = []
    for v in sorted(vs, key=repr):
        if v in seen:
            continue
        stack = [v]
        comp = {v}
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def _atomic_moves(state, edges):
    vs, eids = state
    out = set()
    for e in eids:
        rest = eids - {e}
        for comp in _components(vs, rest, edges):
            out.add((comp, frozenset(i for i in rest if edges[i][0] in comp)))
    return out


def tseitin_hd_game_value(G):
    if not isinstance(G, TseitinGraph):
        raise TypeError("expected a TseitinGraph")
    edges = G.edges
    start = (frozenset(G.vertices), frozenset(range(len(edges))))
    reach_memo = {}
    dmemo = {}
    pmemo = {}

    def trivial(state):
        return len(state[0]) == 1

    def reachable(state):
        hit = reach_memo.get(state)
        if hit is None:
            seen = {state}
            stack = [state]
            while stack:
                s = stack.pop()
                for t in _atomic_moves(s, edges):
                    if t not in seen:
                        seen.add(t)
                        stack.append(t)
            hit = reach_memo[state] = seen
        return hit

    def delayer(state):
        hit = dmemo.get(state)
        if hit is None:
            hit = max(0 if trivial(s) else prover(s) for s in reachable(state))
            dmemo[state] = hit
        return hit

    def prover(state):
        hit = pmemo.get(state)
        if hit is None:
            hit = min(1 + delayer(t) for t in _atomic_moves(state, edges))
            pmemo[state] = hit
        return hit

    return 0 if trivial(start) else delayer(start)


# interactive play


class IllegalMove(ValueError):
    pass


def _parse_lits(text):
    text = text.strip()
    if not text or text in ("-", "pass"):
        return []
    return [int(t) for t in text.replace(",", " ").split()]


def play_interactive(F, game="hd", human_role="delayer", moves=None, ask=input, say=print):
    """Play against the optimal engine; returns the transcript as a list of dicts.

    Human moves are read from `moves` when given (scripted replay), else via
    `ask`.  A Delayer move lists the literals to add ("-" adds nothing).  A
    Prover move in the hardness game is one literal, or "sat" to jump to a
    satisfying extension; in the forgetting game it is the full new assignment.
    """
    F = ClauseSet(F)
    if game not in ("hd", "whd"):
        raise ValueError("game must be hd or whd")
    if human_role not in ("prover", "delayer"):
        raise ValueError("role must be prover or delayer")
    script = iter(moves) if moves is not None else None
    engine = HdGame(F) if game == "hd" else WhdGame(F)
    board = engine.board
    if game == "whd":
        k_star = engine.value()
    transcript = []
    theta = 0
    count = 0
    score_max = 0

    def read(prompt):
        if script is not None:
            try:
                return next(script)
            except StopIteration:
                raise IllegalMove("scripted moves exhausted") from None
        return ask(prompt)

    def record(actor, move):
        row = {"actor": actor, "move": move,
               "resulting_assignment": board.decode(theta).to_json(),
               "score_so_far": count if game == "hd" else score_max}
        transcript.append(row)
        say(json.dumps(row))

    def finished():
        if board.falsified(theta):
            return True
        return game == "hd" and board.satisfied(theta)

    def human_delayer():
        while True:
            text = read("delayer> ")
            try:
                lits = _parse_lits(text)
                ext = board.encode(lits)
                if ext & _bits.comp(theta, board.ev) or ext & _bits.comp(ext, board.ev):
                    raise IllegalMove("a Delayer move may only extend the current assignment")
                return theta | ext, lits
            except (KeyError, ValueError) as e:
                if script is not None:
                    raise IllegalMove(str(e)) from None
                say(f"illegal move: {e}")

    def human_prover():
        while True:
            text = read("prover> ")
            try:
                if game == "hd":
                    if text.strip() == "sat":
                        if not board.satisfiable(theta):
                            raise IllegalMove("jumping is legal only while a satisfying extension exists")
                        m = _bits.find_model(_bits.assign(board.B, theta, board.ev), board.ev)
                        return theta | m, "sat"
                    lits = _parse_lits(text)
                    if len(lits) != 1:
                        raise IllegalMove("a Prover move binds exactly one new variable")
                    lit = board.encode(lits)
                    if _bits.varmask(lit, board.ev) & _bits.varmask(theta, board.ev):
                        raise IllegalMove("a Prover move binds exactly one new variable")
                    return theta | lit, lits
                lits = _parse_lits(text)
                new = board.encode(lits)
                if new & _bits.comp(theta, board.ev) or new & _bits.comp(new, board.ev):
                    raise IllegalMove("the new assignment must be compatible with the current one")
                extra = _bits.varmask(new, board.ev) & ~_bits.varmask(theta, board.ev)
                if extra.bit_count() != 1:
                    raise IllegalMove("the new assignment must add exactly one variable")
                return new, lits
            except (KeyError, ValueError) as e:
                if script is not None:
                    raise IllegalMove(str(e)) from None
                say(f"illegal move: {e}")

    if finished():
        return transcript
    while True:
        if human_role == "delayer":
            theta, mv = human_delayer()
        elif game == "hd":
            new = engine.best_delayer_move(theta, count)
            mv = board.E.literals(new & ~theta)
            theta = new
        else:
            new = engine.best_delayer_move(theta, max(k_star - 1, score_max))
            mv = board.E.literals(new & ~theta)
            theta = new
        record("delayer", mv)
        if finished():
            break
        if human_role == "prover":
            theta, mv = human_prover()
        elif game == "hd":
            kind, x = engine.best_prover_move(theta, count)
            if kind == "jump":
                mv = "sat"
                theta = x
            else:
                mv = board.E.literals(x)
                theta |= x
        else:
            theta = engine.best_prover_move(theta, max(k_star, score_max))
            mv = board.E.literals(theta)
        if game == "hd" and mv != "sat":
            count += 1
        if game == "whd":
            score_max = max(score_max, theta.bit_count())
        record("prover", mv)
        if finished():
            break
    if game == "hd" and board.satisfied(theta) and not board.falsified(theta):
        transcript[-1]["score_so_far"] = 0
    return transcript


def final_score(transcript):
    return transcript[-1]["score_so_far"] if transcript else 0
