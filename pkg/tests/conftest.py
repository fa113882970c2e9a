import numpy as np
import pytest

from nvdlap import build_graph

ACCEPTANCE_RESULTS: list[tuple[str, str, str]] = []


def dense_laplacian(g):
    """Reference ``D - A`` assembled entry by entry from the edge list."""
    lap = np.zeros((g.n, g.n))
    for u, v, w in zip(*g.edges()):
        lap[u, v] -= w
        lap[v, u] -= w
        lap[u, u] += w
        lap[v, v] += w
    return lap


@pytest.fixture
def path2():
    return build_graph(2, [(0, 1, 1.0)])


@pytest.fixture
def path3():
    return build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)])


@pytest.fixture
def k3():
    return build_graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])


@pytest.fixture
def barbell():
    """Two 5-cliques joined by the edge (4, 5)."""
    edges = [(i, j, 1.0) for i in range(5) for j in range(i + 1, 5)]
    edges += [(i + 5, j + 5, 1.0) for i in range(5) for j in range(i + 1, 5)]
    edges.append((4, 5, 1.0))
    return build_graph(10, edges)


@pytest.fixture
def criterion():
    """Record one acceptance criterion outcome for the end-of-run summary.
    ``ok=None`` marks the criterion as skipped."""
    def record(name: str, ok, detail: str = "") -> None:
        status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
        ACCEPTANCE_RESULTS.append((name, status, detail))
        print(f"[{status}] {name}: {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{status}] {name}: {detail}")
