import pytest

from torsionclean.rings import parse_ring, ring_make

CORPUS = [
    "GF(2)", "GF(3)", "GF(4)", "GF(5)", "GF(7)", "GF(8)", "GF(9)", "GF(16)",
    "M(2,GF(2))", "M(2,GF(3))", "M(2,GF(4))", "M(3,GF(2))",
    "T(1,GF(2))", "T(2,GF(2))", "T(3,GF(2))", "T(4,GF(2))", "T(5,GF(2))", "T(2,GF(3))", "T(2,GF(4))",
    "P(GF(2),GF(2))", "P(GF(2),GF(4))", "P(GF(4),GF(8))", "P(GF(2),GF(4),GF(8))",
    "P(GF(2),GF(3))", "P(GF(3),GF(3))", "P(M(2,GF(2)),GF(4))", "P(T(2,GF(2)),GF(3))",
    "Q(GF(2),2,1)", "Q(GF(2),2,2)", "Q(GF(4),2,1)", "Q(GF(3),3,1)", "Q(GF(2),3,1)", "Q(GF(2),2,3)",
]

SMALL = [s for s in CORPUS if parse_ring(s).size <= 256]
TINY = [s for s in CORPUS if parse_ring(s).size <= 64]

ACCEPTANCE_LINES = []


@pytest.fixture(params=CORPUS)
def corpus_ring(request):
    return ring_make(request.param)


@pytest.fixture(params=SMALL)
def small_ring(request):
    return ring_make(request.param)


@pytest.fixture(params=TINY)
def tiny_ring(request):
    return ring_make(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
