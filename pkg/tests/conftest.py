import numpy as np
import pytest

from hyperham import Hypergraph


def random_hypergraph(rng, n, k, p):
    full = Hypergraph.complete(n, k).edges
    return Hypergraph(n, k, full[rng.random(full.shape[0]) < p])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
