import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fragility.errors import GraphError, InputFormatError
from fragility.generators import gen_ceb, gen_complete
from fragility.graph import (
    AttackState,
    build_graph,
    components,
    degree_histogram,
    format_edgelist,
    lcc_size,
    parse_edgelist,
    read_edgelist,
    write_edgelist,
)

from conftest import cycle, path


def test_build_graph_basic():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert g.m == 2
    assert g.edges == ((0, 1), (1, 2))


def test_build_graph_collapses_duplicates_in_first_occurrence_order():
    g = build_graph(3, [(1, 0), (0, 1), (1, 2)])
    assert g.m == 2
    assert g.edges == ((0, 1), (1, 2))
    assert g.edge_id(1, 0) == 0


def test_build_graph_rejects_self_loop():
    with pytest.raises(GraphError, match="self-loop"):
        build_graph(2, [(0, 0)])


def test_build_graph_rejects_out_of_range():
    with pytest.raises(GraphError, match="outside"):
        build_graph(2, [(0, 2)])


def test_adjacency_consistent():
    g = gen_complete(5)
    for v in range(g.n):
        for u, eid in g.adjacency[v]:
            assert set(g.edges[eid]) == {u, v}
    assert sum(len(a) for a in g.adjacency) == 2 * g.m


def test_components_complete():
    view = components(AttackState(gen_complete(4)))
    assert view.count == 1 and view.lcc_size == 4


def test_components_cycle_cut_three_times():
    g = cycle(8)
    state = AttackState(g)
    for eid in (0, 3, 5):
        state.remove(eid)
    assert components(state).count == 3


def test_components_bridged_k5(bridged_k5):
    state = AttackState(bridged_k5)
    state.remove(bridged_k5.edge_id(4, 5))
    view = components(state)
    assert sorted(view.sizes.tolist()) == [5, 5]


def test_labels_follow_smallest_member():
    g = build_graph(6, [(4, 5), (1, 3)])
    view = components(AttackState(g))
    reps = [int(view.members(i).min()) for i in range(view.count)]
    assert reps == sorted(reps) == [0, 1, 2, 4]
    # sizes tie at 2 between {1,3} and {4,5}; the smaller representative wins
    assert view.lcc_size == 2 and 1 in view.lcc_nodes()


def test_lcc_size_edgeless_is_one():
    assert lcc_size(AttackState(build_graph(5, []))) == 1


def test_lcc_size_k8_optimal_cut():
    # Split K_8 into two K_4 by removing the 16 cross edges.
    g = gen_complete(8)
    state = AttackState(g)
    for eid, (u, v) in enumerate(g.edges):
        if (u < 4) != (v < 4):
            state.remove(eid)
    assert state.removed_count == 16
    assert lcc_size(state) == 4


def test_lcc_size_path():
    g = path(3)
    state = AttackState(g)
    state.remove(g.edge_id(0, 1))
    assert lcc_size(state) == 2


def test_degree_histograms():
    k4 = gen_complete(4)
    state = AttackState(k4)
    assert degree_histogram(state) == {3: 4}
    state.remove(0)
    assert degree_histogram(state) == {2: 2, 3: 2}
    assert degree_histogram(AttackState(gen_ceb(8))) == {4: 8}


def test_removed_count_matches_mask():
    g = gen_complete(5)
    state = AttackState(g)
    state.remove(2)
    state.remove(7)
    assert state.removed_count == 2 == int((~state.present).sum())
    with pytest.raises(GraphError):
        state.remove(2)


@st.composite
def graph_and_order(draw):
    n = draw(st.integers(2, 9))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1]), max_size=20))
    g = build_graph(n, pairs)
    order = draw(st.permutations(list(range(g.m))))
    return g, order


@settings(max_examples=60, deadline=None)
@given(graph_and_order())
def test_removal_monotone_and_partition(data):
    g, order = data
    state = AttackState(g)
    previous = lcc_size(state)
    for eid in order:
        state.remove(eid)
        view = components(state)
        assert view.lcc_size <= previous
        previous = view.lcc_size
        assert view.sizes.sum() == g.n
        # no present edge crosses components
        mask = state.present
        assert (view.labels[g.src[mask]] == view.labels[g.dst[mask]]).all()
        # within-component present edges add up to m - r
        within = sum(int(np.count_nonzero(view.labels[g.src[mask]] == lab)) for lab in range(view.count))
        assert within == g.m - state.removed_count


def test_edgelist_roundtrip(tmp_path):
    g = build_graph(6, [(0, 1), (2, 3)])
    p = tmp_path / "g.txt"
    write_edgelist(g, p, ["made in a test"])
    assert read_edgelist(p) == g


def test_edgelist_infers_n_and_skips_comments():
    g = parse_edgelist("# hello\n0 1\n\n3 1\n")
    assert g.n == 4 and g.edges == ((0, 1), (1, 3))


def test_edgelist_header_sets_n_for_empty_graph():
    g = parse_edgelist(format_edgelist(build_graph(1, [])))
    assert g.n == 1 and g.m == 0


@pytest.mark.parametrize("text", ["0 1 2\n", "a b\n", "0 -1\n", "3 3\n", "# n=2\n0 5\n"])
def test_edgelist_errors(text):
    with pytest.raises(InputFormatError):
        parse_edgelist(text)
