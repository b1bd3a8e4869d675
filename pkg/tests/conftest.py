from itertools import combinations
from pathlib import Path

import pytest

from fragility.generators import gen_er
from fragility.graph import build_graph, graph_components

DATA = Path(__file__).parent / "data"


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def two_k5_bridge():
    """Two K_5 joined by a single bridge (node 4 to node 5)."""
    pairs = list(combinations(range(5), 2))
    pairs += [(i + 5, j + 5) for i, j in combinations(range(5), 2)]
    pairs.append((4, 5))
    return build_graph(10, pairs)


def two_triangles_bridge():
    return build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


def small_connected_corpus(count=20, seed=0):
    """Connected ER graphs on 5..8 nodes, deterministic."""
    out, s = [], seed
    while len(out) < count:
        n = 5 + s % 4
        g = gen_er(n, 0.5, s)
        s += 1
        if g.m and graph_components(g).lcc_size == n:
            out.append(g)
    return out


@pytest.fixture
def bridged_k5():
    return two_k5_bridge()


@pytest.fixture
def c8():
    return cycle(8)


# One line per acceptance criterion, printed in the terminal summary.
ACCEPTANCE: dict = {}


def report(number, label, ok):
    ACCEPTANCE[number] = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {label}"
    print(ACCEPTANCE[number])
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
