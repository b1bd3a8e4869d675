import csv
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fragility.attack import greedy_edge_removal
from fragility.generators import gen_complete
from fragility.graph import AttackState
from fragility.metrics import (
    DegreeDistribution,
    average_trajectories,
    divergence_trajectory,
    hellinger,
    write_divergence_csv,
)

from conftest import cycle

K4_MINUS_EDGE = math.sqrt(1 - math.sqrt(2) / 2)


def test_identical_is_zero():
    p = DegreeDistribution.from_degrees([1, 2, 2, 3])
    assert hellinger(p, p) == 0


def test_disjoint_is_one():
    assert hellinger({0: 1.0}, {3: 1.0}) == pytest.approx(1.0)


def test_k4_minus_edge():
    g = gen_complete(4)
    state = AttackState(g)
    state.remove(0)
    before = DegreeDistribution.from_degrees(g.degrees(), 4)
    after = DegreeDistribution.from_state(state)
    assert after.probs.tolist() == [0, 0, 0.5, 0.5]
    assert hellinger(before, after) == pytest.approx(K4_MINUS_EDGE, abs=1e-7)


def test_padding():
    assert hellinger([0.5, 0.5], [0.5, 0.5, 0.0, 0.0]) == 0


def test_rejects_non_distribution():
    with pytest.raises(ValueError):
        DegreeDistribution([0.5, 0.6])
    with pytest.raises(ValueError):
        DegreeDistribution([1.5, -0.5])


def test_from_mapping():
    assert DegreeDistribution.from_mapping({2: 0.25, 0: 0.75}).probs.tolist() == [0.75, 0, 0.25]


dists = st.lists(st.floats(0, 1), min_size=1, max_size=6).filter(lambda xs: sum(xs) > 1e-3).map(
    lambda xs: np.asarray(xs) / sum(xs)
)


def _fix(p):
    # renormalize so the sum check holds after float division
    p = np.asarray(p, dtype=float)
    p[-1] = max(0.0, 1.0 - p[:-1].sum())
    return p / p.sum()


@settings(max_examples=200, deadline=None)
@given(dists, dists, dists)
def test_metric_properties(p, q, r):
    p, q, r = _fix(p), _fix(q), _fix(r)
    hpq, hqp = hellinger(p, q), hellinger(q, p)
    assert 0 <= hpq <= 1 + 1e-12
    assert hpq == pytest.approx(hqp, abs=1e-12)
    assert hpq <= hellinger(p, r) + hellinger(r, q) + 1e-9


def test_trajectory_c8():
    g = cycle(8)
    state = greedy_edge_removal(g, 3, "edge_betweenness")
    traj = divergence_trajectory(g, state.trajectory)
    assert [s for s, _ in traj] == [1, 2, 3]
    # one cut: six nodes of degree 2, two of degree 1
    assert traj[0][1] == pytest.approx(math.sqrt(0.5 * ((1 - math.sqrt(0.75)) ** 2 + 0.25)))
    values = [h for _, h in traj]
    assert values == sorted(values)


def test_trajectory_to_empty_graph():
    g = gen_complete(5)
    state = greedy_edge_removal(g, g.m, "min_degree")
    traj = divergence_trajectory(g, state.trajectory)
    assert traj[-1][1] == pytest.approx(1.0)


def test_average_pads_with_final_value():
    out = average_trajectories([[0.1, 0.2, 0.4], [0.3]])
    assert out.tolist() == pytest.approx([0.2, 0.25, 0.35])
    out = average_trajectories([[(1, 0.5), (2, 1.0)], [(1, 0.0), (2, 0.0)]])
    assert out.tolist() == [0.25, 0.5]


def test_average_errors():
    with pytest.raises(ValueError):
        average_trajectories([])
    with pytest.raises(ValueError):
        average_trajectories([[0.1], []])


def test_divergence_csv(tmp_path):
    path = tmp_path / "h.csv"
    write_divergence_csv(path, [1, 2], [0.5, 0.25], [4, 3.5])
    rows = list(csv.reader(path.open()))
    assert rows == [["step", "hellinger", "lcc_size"], ["1", "0.5", "4"], ["2", "0.25", "3.5"]]
