from hypothesis import strategies as st

from hardness.cnf import Clause, ClauseSet


@st.composite
def clauses(draw, n=4, max_len=3):
    vs = draw(st.lists(st.integers(1, n), max_size=max_len, unique=True))
    return Clause(v if draw(st.booleans()) else -v for v in vs)


@st.composite
def clause_sets(draw, n=4, max_len=3, max_clauses=7):
    return ClauseSet(draw(st.lists(clauses(n, max_len), max_size=max_clauses)))
