import pytest

from hardness import corpus, space
from hardness.measures import asym_width_bits, depth_bits, max_clause_length, sym_width_bits
from hardness.reductions import hardness_bits

ACCEPTANCE_LINES = []


def measure_row(F):
    E, B = F.encoded()
    ev = E.even
    return {
        "n": E.n,
        "q": max_clause_length(F),
        "hd": hardness_bits(B, ev),
        "dep": depth_bits(B, ev),
        "wid": sym_width_bits(B, ev),
        "whd": asym_width_bits(B, ev),
        "semspace": space.semantic_space_bits(B, ev),
        "resspace": space.resolution_space_bits(B, ev),
        "treespace": space.tree_space_bits(B, ev, search=True),
    }


@pytest.fixture(scope="session")
def exhaustive():
    return corpus.exhaustive_corpus(3, 8)


@pytest.fixture(scope="session")
def random_instances():
    return corpus.random_corpus(200, corpus.DEFAULT_SEED)


@pytest.fixture(scope="session")
def horn_instances():
    return corpus.horn_corpus(50, corpus.DEFAULT_SEED)


@pytest.fixture(scope="session")
def exhaustive_table(exhaustive):
    return [measure_row(F) for F in exhaustive]


@pytest.fixture(scope="session")
def random_table(random_instances):
    return [measure_row(F) for F in random_instances]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
