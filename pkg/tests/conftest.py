import itertools
from pathlib import Path

import pytest
from hypothesis import strategies as st

from dissoc import new_graph
from dissoc.graph import parse_graph6

DATA = Path(__file__).parent / "data"

# filled by test_acceptance, printed once at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def naive_count(n, edges, k=None):
    """Oracle: test every subset directly from the definition using sets."""
    nbrs = {v: set() for v in range(n)}
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    total = 0
    sizes = range(n + 1) if k is None else [k]
    for size in sizes:
        for sub in itertools.combinations(range(n), size):
            s = set(sub)
            if all(len(nbrs[v] & s) <= 1 for v in s):
                total += 1
    return total


def naive_graph_count(g, k=None):
    return naive_count(g.n, g.edges(), k)


@st.composite
def graphs(draw, min_n=0, max_n=8, p=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return new_graph(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def connected_graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    # random tree then extra edges
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    return new_graph(n, sorted(edges | set(extra)))


@st.composite
def permutations_of(draw, n):
    return draw(st.permutations(list(range(n))))


@pytest.fixture(scope="session")
def small_graphs():
    """All graphs on 0..7 vertices, one per isomorphism class (frozen fixture)."""
    with open(DATA / "graphs_upto7.g6", encoding="ascii") as fh:
        return [parse_graph6(line) for line in fh if line.strip()]
