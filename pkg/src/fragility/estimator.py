"""Fragility estimation: greedy removal, rewiring repair and add-back.

For each destruction function the pipeline runs greedy removal until the
LCC is at most ``c`` nodes, swaps removed edges back in for LCC edges while
that shrinks the LCC, then restores every removed edge that keeps all
components within ``c``. The branch with fewer final removals wins.
"""
from __future__ import annotations

import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .attack import EDGE_BETWEENNESS, MIN_DEGREE, Strategy, as_strategy, greedy_until_lcc
from .closed_form import DeltaLike, FragilityQuery, f_comp, fragility_from_count
from .generators import GeneratorConfig, generate
from .graph import AttackState, Graph, components

PIPELINE_STRATEGIES = (MIN_DEGREE, EDGE_BETWEENNESS)


@dataclass(frozen=True)
class RewireCandidate:
    """Incident-edge bookkeeping for one LCC node."""

    node: int
    s1: frozenset  # original incident edges
    s2: frozenset  # incident edges still present (inside the LCC)
    s3: frozenset  # incident edges already removed

    @property
    def eligible(self) -> bool:
        # Counted over undirected edges: no more edges inside the LCC than removed ones.
        return 0 < len(self.s2) <= len(self.s3)


def rewire_candidate(state: AttackState, node: int) -> RewireCandidate:
    s1 = state.base.incident(node)
    s2 = frozenset(e for e in s1 if state.present[e])
    return RewireCandidate(node, frozenset(s1), s2, frozenset(s1) - s2)


def rewiring_removal(g: Graph, state: AttackState, seed) -> AttackState:
    """Swap removed edges back in for LCC edges of equal count while the LCC shrinks.

    LCC nodes are visited in ascending id. An eligible node restores a random
    subset of its removed edges, the same size as its surviving ones, and drops
    the survivors; the swap is kept only if the LCC gets strictly smaller.
    Passes repeat until one makes no progress. The removal count never changes.
    """
    if state.base is not g:
        raise ValueError("state does not belong to this graph")
    rng = np.random.default_rng(seed)
    cur = state.copy()
    view = components(cur)
    while True:
        improved = False
        for node in view.lcc_nodes():
            if view.labels[node] != view.lcc_id:
                continue
            cand = rewire_candidate(cur, int(node))
            if not cand.eligible:
                continue
            pool = np.array(sorted(cand.s3))
            back = rng.choice(pool, size=len(cand.s2), replace=False)
            out = np.array(sorted(cand.s2))
            cur.present[back] = True
            cur.present[out] = False
            trial = components(cur)
            if trial.lcc_size < view.lcc_size:
                view = trial
                improved = True
            else:
                cur.present[out] = True
                cur.present[back] = False
        if not improved:
            return cur


def iterative_add_back(g: Graph, state: AttackState, c: int) -> AttackState:
    """Restore removed edges, in ascending id, whenever no component grows past ``c``."""
    view = components(state)
    if view.lcc_size > c:
        raise ValueError(f"add-back needs lcc_size <= c, got {view.lcc_size} > {c}")
    cur = state.copy()
    label = view.labels
    size = view.sizes.copy()
    # Union-find over component labels, seeded with the current components.
    roots = np.arange(len(size))

    def find(x):
        while roots[x] != x:
            roots[x] = roots[roots[x]]
            x = roots[x]
        return x

    for eid in state.removed_ids():
        u, v = g.edges[eid]
        ru, rv = find(label[u]), find(label[v])
        if ru == rv:
            cur.present[eid] = True
        elif size[ru] + size[rv] <= c:
            roots[ru] = rv
            size[rv] += size[ru]
            cur.present[eid] = True
    return cur


@dataclass
class StageResult:
    """Outcome of one strategy branch of the pipeline."""

    strategy: str
    r_greedy: int
    r_after_rewire: int
    r_final: int
    lcc_greedy: int
    lcc_rewire: int
    lcc_final: int
    stage_ms: dict
    state: AttackState = field(repr=False)


def run_branch(g: Graph, c: int, strategy, seed) -> StageResult:
    strategy = as_strategy(strategy)
    t0 = time.perf_counter()
    greedy = greedy_until_lcc(g, c, strategy)
    t1 = time.perf_counter()
    rewired = rewiring_removal(g, greedy, seed)
    t2 = time.perf_counter()
    final = iterative_add_back(g, rewired, c)
    t3 = time.perf_counter()
    return StageResult(
        strategy=strategy.tag,
        r_greedy=greedy.removed_count,
        r_after_rewire=rewired.removed_count,
        r_final=final.removed_count,
        lcc_greedy=components(greedy).lcc_size,
        lcc_rewire=components(rewired).lcc_size,
        lcc_final=components(final).lcc_size,
        stage_ms={"greedy": (t1 - t0) * 1e3, "rewire": (t2 - t1) * 1e3, "addback": (t3 - t2) * 1e3},
        state=final,
    )


def rational_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "approx": float(x)}


@dataclass
class FragilityReport:
    graph_id: str
    n: int
    m: int
    delta: Fraction
    c: int
    strategy: str
    r_greedy: int
    r_final: int
    f_hat: Fraction
    f_comp: Fraction
    fragility_hat: Fraction
    seed: int
    stage_ms: dict
    branches: dict = field(default_factory=dict, repr=False)

    @property
    def r_after_rewire(self) -> int:
        return self.branches[self.strategy].r_after_rewire

    def greedy_fragility(self, strategy: str) -> Fraction:
        """Fragility estimate from the greedy stage of one branch alone."""
        return fragility_from_count(self.branches[strategy].r_greedy, self.m, self.n, self.c)

    def branch_fragility(self, strategy: str) -> Fraction:
        return fragility_from_count(self.branches[strategy].r_final, self.m, self.n, self.c)

    def to_json(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "n": self.n,
            "m": self.m,
            "delta": rational_json(self.delta),
            "c": self.c,
            "strategy": self.strategy,
            "r_greedy": self.r_greedy,
            "r_final": self.r_final,
            "f_hat": rational_json(self.f_hat),
            "f_comp": rational_json(self.f_comp),
            "fragility_hat": rational_json(self.fragility_hat),
            "seed": self.seed,
            "stage_ms": {k: round(v, 3) for k, v in self.stage_ms.items()},
        }


def estimate_fragility(
    g: Graph,
    delta: DeltaLike,
    seed: int,
    graph_id: Optional[str] = None,
    strategies: Sequence[Strategy] = PIPELINE_STRATEGIES,
) -> FragilityReport:
    """Run every strategy branch and keep the one with the fewest final removals.

    Ties go to edge betweenness. ``fragility_hat`` is not clamped.
    """
    q = FragilityQuery.resolve(g.n, delta)
    if g.m == 0:
        raise ValueError("cannot estimate fragility of a graph with no edges")
    branches = {}
    for strategy in strategies:
        res = run_branch(g, q.c, strategy, seed)
        branches[res.strategy] = res
    order = sorted(branches.values(), key=lambda b: (b.r_final, b.strategy != "edge_betweenness"))
    best = order[0]
    f_hat = Fraction(best.r_final, g.m)
    fc = f_comp(g.n, q.c)
    return FragilityReport(
        graph_id=graph_id if graph_id is not None else f"graph(n={g.n},m={g.m})",
        n=g.n,
        m=g.m,
        delta=q.delta,
        c=q.c,
        strategy=best.strategy,
        r_greedy=best.r_greedy,
        r_final=best.r_final,
        f_hat=f_hat,
        f_comp=fc,
        fragility_hat=1 - f_hat / fc,
        seed=seed,
        stage_ms=dict(best.stage_ms),
        branches=branches,
    )


@dataclass
class BatchReport:
    config: Optional[GeneratorConfig]
    delta: Fraction
    trials: int
    mean: Fraction
    sd: float
    per_trial: list

    def greedy_mean(self, strategy: str) -> Fraction:
        return sum((r.greedy_fragility(strategy) for r in self.per_trial), Fraction(0)) / self.trials

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "mean": rational_json(self.mean),
            "sd": self.sd,
            "per_trial": [r.to_json() for r in self.per_trial],
        }


def summarize(reports: list, delta: Fraction, config: Optional[GeneratorConfig] = None) -> BatchReport:
    values = [r.fragility_hat for r in reports]
    mean = sum(values, Fraction(0)) / len(values)
    sd = statistics.stdev(float(v) for v in values) if len(values) > 1 else 0.0
    return BatchReport(config, delta, len(reports), mean, sd, list(reports))


def _strip(report: FragilityReport) -> FragilityReport:
    # Final states hold numpy masks; drop them before crossing process boundaries.
    for b in report.branches.values():
        b.state = None
    return report


def _trial(args) -> FragilityReport:
    config, delta, seed = args
    cfg = config.with_seed(seed)
    return _strip(estimate_fragility(generate(cfg), delta, seed, graph_id=cfg.describe()))


def batch_estimate(config: GeneratorConfig, delta: DeltaLike, trials: int, base_seed: int, jobs: int = 1) -> BatchReport:
    """Estimate fragility on ``trials`` realizations seeded ``base_seed, base_seed+1, ...``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    q = FragilityQuery.resolve(config.n, delta)
    tasks = [(config, q.delta, base_seed + i) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_trial, tasks))
    else:
        reports = [_trial(t) for t in tasks]
    return summarize(reports, q.delta, config)
