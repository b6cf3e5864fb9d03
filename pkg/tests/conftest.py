import pytest

from metric_median import CycleMetric, GenSpec, LineMetric, UniformMetric, generate

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def family(n, seed=0):
    """One instance of every generator kind at size n."""
    return {
        "uniform": UniformMetric(n),
        "line": LineMetric(n),
        "cycle": CycleMetric(n),
        "euclidean": generate(GenSpec("euclidean", n, dim=3, seed=seed)),
        "graph": generate(GenSpec("graph", n, seed=seed, density=0.3)),
    }


@pytest.fixture
def line4():
    return LineMetric(4)
