"""Clause-sets, partial assignments, instantiation, entailment and DIMACS I/O."""
from __future__ import annotations

import json

from . import _bits
from ._bits import CapExceeded, Encoding

DEFAULT_CAP = 24


class TautologyError(ValueError):
    pass


class DimacsError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def complement(x):
    return -x


def _lit_key(x):
    return (abs(x), x < 0)


class Clause(frozenset):
    """A finite set of non-complementary integer literals."""

    def __new__(cls, literals=()):
        self = super().__new__(cls, literals)
        for x in self:
            if not isinstance(x, int) or x == 0:
                raise ValueError(f"invalid literal {x!r}")
            if -x in self:
                raise TautologyError("tautological clause")
        return self

    @property
    def variables(self):
        return frozenset(abs(x) for x in self)

    def sorted(self):
        return sorted(self, key=_lit_key)

    def __repr__(self):
        return "{" + ",".join(str(x) for x in self.sorted()) + "}"

    __str__ = __repr__


BOTTOM = Clause()


def _clause_key(C):
    return (len(C), [_lit_key(x) for x in C.sorted()])


class ClauseSet(frozenset):
    """A finite set of clauses.  The empty clause-set is the constant true."""

    def __new__(cls, clauses=()):
        return super().__new__(cls, (c if isinstance(c, Clause) else Clause(c) for c in clauses))

    @property
    def variables(self):
        out = set()
        for C in self:
            out.update(abs(x) for x in C)
        return frozenset(out)

    @property
    def n(self):
        return len(self.variables)

    @property
    def c(self):
        return len(self)

    @property
    def ell(self):
        return sum(len(C) for C in self)

    def sorted(self):
        return sorted(self, key=_clause_key)

    def encoded(self, variables=None):
        """(Encoding, frozenset of bit clauses); cached for the default scope."""
        if variables is None:
            enc = getattr(self, "_enc", None)
            if enc is None:
                E = Encoding(self.variables)
                enc = (E, E.clauses(self))
                self._enc = enc
            return enc
        E = Encoding(variables)
        return E, E.clauses(self)

    def text(self):
        return " ".join(repr(C) for C in self.sorted()) if self else "top"

    def __repr__(self):
        return "ClauseSet(" + self.text() + ")"

    __str__ = text


TOP = ClauseSet()


def decode(E, F):
    return ClauseSet(Clause(E.literals(c)) for c in F)


class PartialAssignment(frozenset):
    """A partial assignment, stored as the set of literals it makes true."""

    def __new__(cls, literals=()):
        self = super().__new__(cls, literals)
        for x in self:
            if x == 0 or -x in self:
                raise ValueError("variable bound twice")
        return self

    @classmethod
    def from_dict(cls, bindings):
        return cls(int(v) if b else -int(v) for v, b in bindings.items())

    @classmethod
    def falsifying(cls, C):
        """phi_C: sets exactly the literals of C to 0."""
        return cls(-x for x in C)

    def as_dict(self):
        return {abs(x): int(x > 0) for x in sorted(self, key=abs)}

    @property
    def variables(self):
        return frozenset(abs(x) for x in self)

    @property
    def n(self):
        return len(self)

    def value(self, v):
        if v in self:
            return 1
        if -v in self:
            return 0
        return None

    def compatible(self, other):
        return not any(-x in other for x in self)

    def extend(self, literals):
        return PartialAssignment(self | set(literals))

    def to_json(self):
        return {str(v): b for v, b in self.as_dict().items()}

    def __repr__(self):
        return "<" + ",".join(f"{v}<-{b}" for v, b in self.as_dict().items()) + ">"


EPSILON = PartialAssignment()


def apply(phi, F):
    """phi * F."""
    phi = frozenset(phi)
    neg = frozenset(-x for x in phi)
    out = []
    for C in F:
        if C & phi:
            continue
        out.append(Clause(C - neg) if C & neg else C)
    return ClauseSet(out)


def _check_cap(n, cap):
    if cap is not None and n > cap:
        raise CapExceeded(f"{n} variables exceed the cap of {cap}")


def is_satisfiable(F, cap=DEFAULT_CAP):
    F = ClauseSet(F)
    _check_cap(F.n, cap)
    E, B = F.encoded()
    return _bits.satisfiable(B, E.even)


def find_model(F, cap=DEFAULT_CAP):
    """A satisfying partial assignment over var(F), or None."""
    F = ClauseSet(F)
    _check_cap(F.n, cap)
    E, B = F.encoded()
    m = _bits.find_model(B, E.even)
    if m is None:
        return None
    return PartialAssignment(E.literals(m))


def entails(F, G, cap=DEFAULT_CAP):
    F, G = ClauseSet(F), ClauseSet(G)
    V = F.variables | G.variables
    _check_cap(len(V), cap)
    E = Encoding(V)
    B = E.clauses(F)
    for D in G:
        d = E.clause(D)
        # F entails D iff F with D falsified is unsatisfiable
        if _bits.satisfiable(_bits.assign(B, _bits.comp(d, E.even), E.even), E.even):
            return False
    return True


def equivalent(F, G, cap=DEFAULT_CAP):
    return entails(F, G, cap) and entails(G, F, cap)


def prime_implicates(F, cap=DEFAULT_CAP):
    F = ClauseSet(F)
    _check_cap(F.n, cap)
    E, B = F.encoded()
    return decode(E, _bits.prime_implicates(B, E.even))


def subsumption_reduce(F):
    F = ClauseSet(F)
    out = []
    for C in sorted(F, key=len):
        if not any(D <= C for D in out):
            out.append(C)
    return ClauseSet(out)


def parse_dimacs(text):
    if isinstance(text, bytes):
        text = text.decode()
    clauses = []
    current = []
    header = None
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("c") or s.startswith("%"):
            continue
        if s.startswith("p"):
            parts = s.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError("malformed header", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError("malformed header", lineno) from None
            continue
        if header is None:
            raise DimacsError("clause before header", lineno)
        for tok in s.split():
            try:
                x = int(tok)
            except ValueError:
                raise DimacsError(f"non-integer token {tok!r}", lineno) from None
            if x == 0:
                try:
                    clauses.append(Clause(current))
                except TautologyError:
                    raise DimacsError("tautological clause", lineno) from None
                current = []
            else:
                current.append(x)
    if header is None:
        raise DimacsError("missing header")
    if current:
        try:
            clauses.append(Clause(current))
        except TautologyError:
            raise DimacsError("tautological clause") from None
    return ClauseSet(clauses)


def write_dimacs(F, comments=()):
    F = ClauseSet(F)
    V = F.variables
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {max(V) if V else 0} {len(F)}")
    for C in F.sorted():
        lines.append(" ".join([str(x) for x in C.sorted()] + ["0"]))
    return ("\n".join(lines) + "\n").encode()


def to_json(F):
    return [[x for x in C.sorted()] for C in ClauseSet(F).sorted()]


def from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    return ClauseSet(Clause(C) for C in data)
