import pytest

from hopfdual.corpus import load_corpus


@pytest.fixture(scope="session")
def corpus():
    return {e.name: e for e in load_corpus()}


@pytest.fixture(scope="session")
def pairs(corpus):
    from hopfdual.modular import enumerate_pairs
    return {k: enumerate_pairs(e.group) for k, e in corpus.items()}


# one line per acceptance criterion, filled in by test_acceptance.py
CRITERIA: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[k])
