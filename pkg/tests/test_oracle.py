from fractions import Fraction
from itertools import combinations

import pytest

from fragility.errors import BudgetExceededError
from fragility.generators import gen_ceb, gen_complete, gen_er, gen_gb
from fragility.graph import build_graph
from fragility.oracle import (
    Composition,
    brute_edge_betweenness,
    brute_min_lcc,
    brute_r_star,
    check_splitting_squares,
    compositions,
    golden_rows,
    read_golden,
    write_golden,
)

from conftest import DATA, cycle, path, two_triangles_bridge


def test_brute_r_star_examples():
    assert brute_r_star(gen_complete(5), 2) == 8
    assert brute_r_star(gen_ceb(8), 4) == 8
    assert brute_r_star(path(4), 2) == 1
    assert brute_r_star(gen_gb(8), 4) == 8


@pytest.mark.parametrize("seed", range(12))
def test_partition_and_subset_search_agree(seed):
    g = gen_er(7, 0.35, seed)
    if g.m > 14:
        pytest.skip("subset search too slow")
    for c in range(1, g.n):
        assert brute_r_star(g, c, "partition") == brute_r_star(g, c, "subset")


def test_budget():
    with pytest.raises(BudgetExceededError):
        brute_r_star(gen_complete(11), 3)
    # wide but sparse: falls back to subset search
    assert brute_r_star(path(12), 6) == 1
    with pytest.raises(BudgetExceededError):
        brute_edge_betweenness(gen_complete(10))


def test_min_lcc_of_c8_after_three_removals():
    assert brute_min_lcc(cycle(8), 3) == 3


def test_compositions_enumerated():
    comps = list(compositions(4))
    assert len(comps) == 8
    assert Composition((1, 1, 1, 1)) in comps
    assert all(c.total == 4 for c in comps)
    assert Composition((2, 1, 1)).suffix_sums == (2, 1, 0)


@pytest.mark.parametrize("c", [1, 4, 12])
def test_splitting_squares(c):
    assert check_splitting_squares(c)
    assert len(list(compositions(c))) == 2 ** (c - 1)


def test_betweenness_enumeration_examples():
    assert brute_edge_betweenness(build_graph(2, [(0, 1)])) == {0: 1}
    assert brute_edge_betweenness(path(3)) == {0: 2, 1: 2}
    g = two_triangles_bridge()
    scores = brute_edge_betweenness(g)
    bridge = g.edge_id(2, 3)
    assert scores[bridge] == 9
    assert all(s < scores[bridge] for e, s in scores.items() if e != bridge)


def test_betweenness_sums_to_total_distance():
    # Each pair contributes its distance in total across edges.
    g = gen_ceb(6)
    total = sum(brute_edge_betweenness(g).values())
    within = 2 * 3 * 2  # same-side pairs at distance 2
    across = 9  # cross pairs at distance 1
    assert total == Fraction(within + across)


def test_golden_fixture_is_current(tmp_path):
    rows = golden_rows(("complete", "ceb", "gb"), 8)
    assert rows == read_golden(DATA / "golden_r_star.csv")
    out = tmp_path / "g.csv"
    write_golden(out, rows)
    assert out.read_text() == (DATA / "golden_r_star.csv").read_text()
