import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import connected_graphs, graphs, naive_count, naive_graph_count, permutations_of
from dissoc.counting import (
    BRUTE_MAX,
    MemoTable,
    component_factors,
    component_key,
    count,
    count_brute,
    count_recursive,
    dissociation_polynomial,
    enumerate_dissociation_sets,
    is_dissociation_set,
    path_count,
    random_pivot,
)
from dissoc.families import complete, cycle, path, star, star_product, units
from dissoc.graph import VertexSet, emit_graph6, delete_edge, disjoint_union, new_graph, relabel

# Frozen oracle values: produced by naive_count (set-based subset test) and
# checked again below so a regression in either side shows up.
ORACLE = {
    "P3": 7, "K3": 7, "K1,3": 12, "2K1+K2": 16, "C4": 11, "C5": 21, "K4": 11,
    "P10": 504, "C8": 131,
}


def test_frozen_oracle_values():
    assert naive_count(3, [(0, 1), (1, 2)]) == ORACLE["P3"]
    assert naive_count(3, [(0, 1), (1, 2), (0, 2)]) == ORACLE["K3"]
    assert naive_count(4, [(0, 1), (0, 2), (0, 3)]) == ORACLE["K1,3"]
    assert naive_count(4, [(2, 3)]) == ORACLE["2K1+K2"]
    assert naive_graph_count(cycle(4)) == ORACLE["C4"]
    assert naive_graph_count(cycle(5)) == ORACLE["C5"]
    assert naive_graph_count(complete(4)) == ORACLE["K4"]
    assert naive_graph_count(path(10)) == ORACLE["P10"]
    assert naive_graph_count(cycle(8)) == ORACLE["C8"]


@pytest.mark.parametrize("g,key", [
    (path(3), "P3"), (complete(3), "K3"), (star(3), "K1,3"), (units(2, 1), "2K1+K2"),
    (cycle(4), "C4"), (cycle(5), "C5"), (complete(4), "K4"), (path(10), "P10"), (cycle(8), "C8"),
])
def test_counters_agree_with_frozen_values(g, key):
    assert count_brute(g) == ORACLE[key]
    assert count_recursive(g) == ORACLE[key]


# -- membership ----------------------------------------------------------------

def test_is_dissociation_set_examples():
    k3 = complete(3)
    assert all(is_dissociation_set(k3, VertexSet.of(3, s)) for s in [(0, 1), (0, 2), (1, 2)])
    assert not is_dissociation_set(k3, VertexSet.of(3, [0, 1, 2]))
    assert is_dissociation_set(path(4), VertexSet.of(4, [0, 1, 3]))
    assert not is_dissociation_set(path(4), [0, 1, 2])
    assert is_dissociation_set(path(4), [])


# -- brute force -----------------------------------------------------------------

def test_count_brute_examples():
    assert count_brute(path(3)) == 7
    assert count_brute(complete(3)) == 7
    assert count_brute(units(2, 1)) == 16
    assert count_brute(new_graph(0)) == 1


def test_count_brute_refuses_large_graphs():
    with pytest.raises(ValueError):
        count_brute(path(BRUTE_MAX + 1))


def test_numpy_scan_matches_recursion():
    # 16..18 vertices takes the vectorised branch
    for g in (path(16), cycle(17), star_product(1, [2] * 8), star_product(3, [2] * 7 + [1])):
        assert count_brute(g) == count_recursive(g)
    assert dissociation_polynomial(path(16)).total() == path_count(16)


@settings(max_examples=150)
@given(graphs(max_n=8))
def test_brute_matches_naive_oracle(g):
    assert count_brute(g) == naive_graph_count(g)


# -- polynomial --------------------------------------------------------------------

def test_polynomial_examples():
    assert list(dissociation_polynomial(path(2))) == [1, 2, 1]
    assert list(dissociation_polynomial(complete(3))) == [1, 3, 3, 0]
    poly = dissociation_polynomial(path(4))
    assert list(poly) == [1, 4, 6, 2, 0] and poly.total() == 13
    assert str(poly) == "1 4 6 2 0"


@settings(max_examples=100)
@given(graphs(max_n=8))
def test_polynomial_invariants(g):
    poly = dissociation_polynomial(g)
    assert len(poly) == g.n + 1
    assert poly[0] == 1
    if g.n >= 2:
        assert poly[1] == g.n
        assert poly[2] == g.n * (g.n - 1) // 2       # every pair qualifies
    assert poly.total() == count_brute(g)
    assert all(poly[k] == naive_count(g.n, g.edges(), k) for k in range(g.n + 1))


# -- enumeration -----------------------------------------------------------------------

def test_enumerate_examples():
    assert [list(s) for s in enumerate_dissociation_sets(new_graph(1))] == [[], [0]]
    assert [list(s) for s in enumerate_dissociation_sets(path(2))] == [[], [0], [1], [0, 1]]
    sets = [s.bits for s in enumerate_dissociation_sets(path(3))]
    assert sets == [m for m in range(8) if m != 0b111]


@settings(max_examples=60)
@given(graphs(max_n=9))
def test_enumeration_is_sorted_complete_and_valid(g):
    bits = [s.bits for s in enumerate_dissociation_sets(g)]
    assert bits == sorted(set(bits))
    assert len(bits) == count_brute(g)
    assert all(is_dissociation_set(g, s) for s in enumerate_dissociation_sets(g))


# -- path recurrence -------------------------------------------------------------------------

def test_path_count_examples():
    assert path_count(0) == 1
    assert path_count(6) == 44
    assert path_count(8) == 149
    with pytest.raises(ValueError):
        path_count(-1)


def test_path_count_matches_brute():
    for n in range(0, 13):
        assert path_count(n) == count_brute(path(n))


# -- recursion -----------------------------------------------------------------------------

def test_recursive_examples():
    assert count_recursive(path(9)) == 274
    assert count_recursive(star_product(1, [2, 2, 2, 2])) == 304
    assert count_recursive(star_product(1, [1, 1, 2, 2, 2])) == 292


@settings(max_examples=200)
@given(graphs(max_n=10))
def test_recursive_matches_brute(g):
    assert count_recursive(g) == count_brute(g)


@settings(max_examples=60)
@given(connected_graphs(max_n=9), st.integers(0, 2**32 - 1))
def test_pivot_choice_does_not_matter(g, seed):
    expected = count_brute(g)
    assert count_recursive(g, pivot=random_pivot(random.Random(seed))) == expected


@settings(max_examples=60)
@given(graphs(max_n=9), st.data())
def test_count_invariant_under_relabeling(g, data):
    perm = data.draw(permutations_of(g.n))
    assert count_recursive(relabel(g, perm)) == count_recursive(g)


@settings(max_examples=60)
@given(graphs(max_n=6), graphs(max_n=6))
def test_disjoint_union_multiplies(a, b):
    u = disjoint_union(a, b)
    assert count_recursive(u) == count_brute(a) * count_brute(b)
    assert component_factors(u) == [f for part in (a, b) for f in component_factors(part)]


def test_component_factors():
    assert component_factors(units(2, 1)) == [2, 2, 4]
    assert component_factors(path(5)) == [24]


@settings(max_examples=80)
@given(graphs(min_n=2, max_n=8), st.data())
def test_edge_deletion_never_decreases(g, data):
    if not g.num_edges:
        return
    u, v = data.draw(st.sampled_from(g.edges()))
    assert count_recursive(g) <= count_recursive(delete_edge(g, u, v))


@settings(max_examples=80)
@given(graphs(max_n=9))
def test_upper_bound_and_equality_class(g):
    d = count_recursive(g)
    assert d <= 2 ** g.n
    assert (d == 2 ** g.n) == (max(g.degrees(), default=0) <= 1)


def test_large_graphs_use_labeled_keys():
    # cycle rank >= 2 beyond the canonizer range still counts correctly
    g = star_product(3, [3] * 5 + [2] * 2)
    assert g.n == 22 and component_key(g) == emit_graph6(g)
    assert count_recursive(g) == count_brute(g)
    assert count_recursive(path(120)) == path_count(120)


def test_count_at_vertex_cap():
    # 2^126 is the largest possible value and still fits the 128-bit budget
    assert count_recursive(new_graph(126)) == 2 ** 126


def test_memo_is_shared_and_consistent():
    memo = MemoTable()
    assert count_recursive(path(12), memo) == path_count(12)
    size = len(memo)
    assert size > 0
    assert count(path(12), memo) == path_count(12)
    assert len(memo) == size and memo.hits > 0
    assert memo.get(component_key(path(12))) == path_count(12)
    with pytest.raises(RuntimeError):
        memo.put(component_key(path(12)), 0)
