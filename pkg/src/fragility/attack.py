"""Destruction functions, greedy edge removal and the random-removal baseline."""
from __future__ import annotations

import csv
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .graph import AttackState, Graph, RemovalRecord, components

STRATEGIES = ("edge_betweenness", "min_degree", "random")

# Relative slack when comparing float scores, so that values equal up to
# summation order tie and fall back to the smallest edge id.
TIE_TOL = 1e-9


@dataclass(frozen=True)
class Strategy:
    tag: str
    seed: Optional[int] = None

    def __post_init__(self):
        if self.tag not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.tag!r}; expected one of {STRATEGIES}")
        if (self.tag == "random") != (self.seed is not None):
            raise ValueError("a seed is required for the random strategy and only for it")


EDGE_BETWEENNESS = Strategy("edge_betweenness")
MIN_DEGREE = Strategy("min_degree")


def as_strategy(value) -> Strategy:
    return value if isinstance(value, Strategy) else Strategy(value)


def _lcc_edges(state: AttackState):
    """LCC node ids and the present edge ids with both endpoints in it."""
    view = components(state)
    g = state.base
    in_lcc = view.labels == view.lcc_id
    eids = np.flatnonzero(state.present & in_lcc[g.src])
    return view.lcc_nodes(), eids


def score_edge_betweenness(state: AttackState) -> np.ndarray:
    """Edge betweenness of every edge, computed on the current LCC only.

    Returns a float array indexed by edge id; edges that are removed or lie
    outside the LCC score ``-inf``. Values count unordered node pairs, so a
    lone edge scores 1.
    """
    g = state.base
    scores = np.full(g.m, -np.inf)
    nodes, eids = _lcc_edges(state)
    if len(eids) == 0:
        return scores
    k = len(nodes)
    local = np.full(g.n, -1, dtype=np.int64)
    local[nodes] = np.arange(k)
    a, b = local[g.src[eids]], local[g.dst[eids]]
    adj = np.zeros((k, k))
    adj[a, b] = 1.0
    adj[b, a] = 1.0

    # Breadth-first search from every source at once, one level per pass.
    dist = np.full((k, k), -1, dtype=np.int64)
    sigma = np.zeros((k, k))
    idx = np.arange(k)
    dist[idx, idx] = 0
    sigma[idx, idx] = 1.0
    frontier = np.eye(k, dtype=bool)
    levels = [frontier]
    while True:
        reach = (sigma * frontier) @ adj
        new = (reach > 0) & (dist < 0)
        if not new.any():
            break
        sigma[new] = reach[new]
        dist[new] = len(levels)
        frontier = new
        levels.append(new)

    # Dependency accumulation from the deepest level back to the sources.
    delta = np.zeros((k, k))
    for d in range(len(levels) - 1, 0, -1):
        coef = np.where(levels[d], (1.0 + delta) / np.where(sigma > 0, sigma, 1.0), 0.0)
        delta += np.where(levels[d - 1], sigma * (coef @ adj), 0.0)
    ratio = (1.0 + delta) / sigma
    down = dist[:, b] == dist[:, a] + 1
    up = dist[:, a] == dist[:, b] + 1
    flow = np.where(down, sigma[:, a] * ratio[:, b], 0.0) + np.where(up, sigma[:, b] * ratio[:, a], 0.0)
    scores[eids] = flow.sum(axis=0) / 2.0
    return scores


def exact_edge_betweenness(state: AttackState) -> dict[int, Fraction]:
    """Brandes accumulation in rational arithmetic over the current LCC."""
    g = state.base
    nodes, eids = _lcc_edges(state)
    allowed = set(int(e) for e in eids)
    adj = {int(v): [(u, e) for u, e in g.adjacency[v] if e in allowed] for v in nodes}
    score = {e: Fraction(0) for e in sorted(allowed)}
    for s in adj:
        order = []
        pred: dict[int, list[tuple[int, int]]] = {v: [] for v in adj}
        sigma = dict.fromkeys(adj, 0)
        dist = dict.fromkeys(adj, -1)
        sigma[s], dist[s] = 1, 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w, e in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    pred[w].append((v, e))
        dep = dict.fromkeys(adj, Fraction(0))
        for w in reversed(order):
            for v, e in pred[w]:
                share = Fraction(sigma[v], sigma[w]) * (1 + dep[w])
                score[e] += share
                dep[v] += share
    return {e: s / 2 for e, s in score.items()}


def score_min_degree(state: AttackState) -> np.ndarray:
    """``-min(deg(u), deg(v))`` for LCC edges, ``-inf`` elsewhere.

    Every edge at a minimum-degree LCC node shares the top score.
    """
    g = state.base
    scores = np.full(g.m, -np.inf)
    _, eids = _lcc_edges(state)
    deg = state.degrees()
    scores[eids] = -np.minimum(deg[g.src[eids]], deg[g.dst[eids]])
    return scores


SCORERS = {"edge_betweenness": score_edge_betweenness, "min_degree": score_min_degree}


def pick_edge(scores: np.ndarray) -> int:
    """Index of the best finite score; near-ties go to the smallest edge id."""
    best = scores.max()
    if not np.isfinite(best):
        return -1
    slack = TIE_TOL * max(1.0, abs(best))
    return int(np.flatnonzero(scores >= best - slack)[0])


class _Remover:
    def __init__(self, state: AttackState, strategy: Strategy):
        self.state = state
        self.strategy = strategy
        if strategy.tag == "random":
            self.rng = np.random.default_rng(strategy.seed)
            self.scorer = None
        else:
            self.scorer = SCORERS[strategy.tag]

    def step(self) -> RemovalRecord:
        state = self.state
        if self.scorer is None:
            present = state.present_ids()
            return state.remove(int(present[self.rng.integers(len(present))]))
        scores = self.scorer(state)
        eid = pick_edge(scores)
        if eid < 0:
            raise RuntimeError("no removable edge left in the LCC")
        return state.remove(eid, float(scores[eid]))


def greedy_edge_removal(g: Graph, r: int, strategy) -> AttackState:
    """Remove ``r`` edges one at a time, each the current top-scoring LCC edge."""
    if not 0 <= r <= g.m:
        raise ValueError(f"cannot remove {r} edges from a graph with {g.m}")
    state = AttackState(g)
    remover = _Remover(state, as_strategy(strategy))
    for _ in range(r):
        remover.step()
    return state


def greedy_until_lcc(g: Graph, c: int, strategy) -> AttackState:
    """Remove greedily until no component exceeds ``c`` nodes."""
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    state = AttackState(g)
    remover = _Remover(state, as_strategy(strategy))
    size = components(state).lcc_size
    while size > c:
        size = remover.step().lcc_size
    return state


def random_removal_trajectory(g: Graph, seed: int) -> list[RemovalRecord]:
    """Remove all edges in a uniformly random order, recording the LCC each step."""
    state = AttackState(g)
    for eid in np.random.default_rng(seed).permutation(g.m):
        state.remove(int(eid))
    return state.trajectory


def removals_to_reach(records, c: int, initial_lcc: int) -> int:
    """Number of steps until the LCC first drops to ``c`` or below."""
    if initial_lcc <= c:
        return 0
    for rec in records:
        if rec.lcc_size <= c:
            return rec.step
    raise ValueError(f"trajectory never reaches LCC <= {c}")


TRAJECTORY_FIELDS = ("step", "edge_u", "edge_v", "lcc_size", "score")


def write_trajectory_csv(g: Graph, records, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRAJECTORY_FIELDS)
        for rec in records:
            u, v = g.edges[rec.edge_id]
            score = "" if rec.score is None else repr(rec.score)
            writer.writerow((rec.step, u, v, rec.lcc_size, score))
