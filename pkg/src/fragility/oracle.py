"""Brute-force ground truth for small instances.

None of this shares code with the estimators it certifies: removal minima
come from set-partition search, betweenness from explicit path enumeration.
"""
from __future__ import annotations

import csv
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path
from typing import Iterable, Iterator

from .errors import BudgetExceededError
from .graph import Graph

PARTITION_MAX_N = 10
SUBSET_MAX_M = 24
BETWEENNESS_MAX_N = 9


def _min_cut_partition(g: Graph, c: int) -> int:
    n = g.n
    earlier = [[u for u, _ in g.adjacency[v] if u < v] for v in range(n)]
    block = [-1] * n
    sizes: list[int] = []
    best = g.m

    def place(v: int, cost: int) -> None:
        nonlocal best
        if cost >= best:
            return
        if v == n:
            best = cost
            return
        for b in range(len(sizes) + 1):
            if b == len(sizes):
                sizes.append(0)
            if sizes[b] < c:
                block[v] = b
                sizes[b] += 1
                extra = sum(1 for u in earlier[v] if block[u] != b)
                place(v + 1, cost + extra)
                sizes[b] -= 1
            if sizes[b] == 0:
                sizes.pop()
        block[v] = -1

    place(0, 0)
    return best


def _largest_after_removal(g: Graph, removed: set[int]) -> int:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid, (u, v) in enumerate(g.edges):
        if eid not in removed:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    counts: dict[int, int] = {}
    for x in range(g.n):
        r = find(x)
        counts[r] = counts.get(r, 0) + 1
    return max(counts.values(), default=0)


def _min_cut_subsets(g: Graph, c: int) -> int:
    for r in range(g.m + 1):
        for combo in combinations(range(g.m), r):
            if _largest_after_removal(g, set(combo)) <= c:
                return r
    return g.m


def brute_r_star(g: Graph, c: int, method: str = "auto") -> int:
    """Exact minimum number of edge removals leaving every component <= c nodes.

    ``method="partition"`` searches set partitions of the nodes into blocks of
    at most ``c`` and counts the edges between blocks (those are exactly the
    edges that must go). ``method="subset"`` tries removal sets in order of
    size. ``"auto"`` picks partitions for ``n <= 10`` and subsets for
    ``m <= 24``.
    """
    if not 1 <= c < g.n:
        raise ValueError(f"need 1 <= c < n, got n={g.n}, c={c}")
    if method == "auto":
        if g.n <= PARTITION_MAX_N:
            method = "partition"
        elif g.m <= SUBSET_MAX_M:
            method = "subset"
        else:
            raise BudgetExceededError(
                f"oracle budget exceeded: n={g.n} > {PARTITION_MAX_N} and m={g.m} > {SUBSET_MAX_M}"
            )
    if method == "partition":
        if g.n > PARTITION_MAX_N:
            raise BudgetExceededError(f"partition search limited to n <= {PARTITION_MAX_N}")
        return _min_cut_partition(g, c)
    if method == "subset":
        if g.m > SUBSET_MAX_M:
            raise BudgetExceededError(f"subset search limited to m <= {SUBSET_MAX_M}")
        return _min_cut_subsets(g, c)
    raise ValueError(f"unknown method {method!r}")


def brute_min_lcc(g: Graph, r: int) -> int:
    """Smallest achievable LCC size after removing exactly ``r`` edges."""
    if g.m > SUBSET_MAX_M:
        raise BudgetExceededError(f"exhaustive removal limited to m <= {SUBSET_MAX_M}")
    return min(_largest_after_removal(g, set(combo)) for combo in combinations(range(g.m), r))


# -- splitting squares ------------------------------------------------------


@dataclass(frozen=True)
class Composition:
    """Ordered positive parts summing to ``total``."""

    parts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def suffix_sums(self) -> tuple[int, ...]:
        """The decreasing sequence d_0 >= d_1 >= ... >= 0 recovered from the parts."""
        out, acc = [], self.total
        for a in self.parts:
            acc -= a
            out.append(acc)
        return tuple(out)

    def square_sum(self) -> int:
        return sum(a * a for a in self.parts)


def compositions(c: int) -> Iterator[Composition]:
    """All 2**(c-1) compositions of ``c``."""
    if c < 1:
        raise ValueError("c must be positive")
    for cuts in product((False, True), repeat=c - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield Composition(tuple(parts))


def check_splitting_squares(c: int) -> bool:
    """True iff no composition of ``c`` has square sum above ``c**2``."""
    if c > 12:
        raise BudgetExceededError("exhaustive composition check limited to c <= 12")
    return all(comp.square_sum() <= c * c for comp in compositions(c))


# -- betweenness by path enumeration ----------------------------------------


def _all_shortest_paths(g: Graph, s: int, t: int) -> list[list[int]]:
    """Every shortest s-t path as a list of edge ids."""
    dist = [-1] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y, _ in g.adjacency[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    if dist[t] < 0:
        return []
    paths: list[list[int]] = []

    def walk(x: int, acc: list[int]) -> None:
        if x == s:
            paths.append(list(acc))
            return
        for y, eid in g.adjacency[x]:
            if dist[y] == dist[x] - 1:
                acc.append(eid)
                walk(y, acc)
                acc.pop()

    walk(t, [])
    return paths


def brute_edge_betweenness(g: Graph) -> dict[int, Fraction]:
    """Unnormalized edge betweenness summed over unordered node pairs."""
    if g.n > BETWEENNESS_MAX_N:
        raise BudgetExceededError(f"path enumeration limited to n <= {BETWEENNESS_MAX_N}")
    score = {eid: Fraction(0) for eid in range(g.m)}
    for s, t in combinations(range(g.n), 2):
        paths = _all_shortest_paths(g, s, t)
        if not paths:
            continue
        share = Fraction(1, len(paths))
        for path in paths:
            for eid in path:
                score[eid] += share
    return score


# -- golden fixtures --------------------------------------------------------

GOLDEN_FIELDS = ("family", "n", "c", "r_star")


def golden_rows(families: Iterable[str] = ("complete", "ceb"), max_n: int = 8) -> list[dict]:
    from .generators import gen_ceb, gen_complete, gen_gb

    builders = {"complete": gen_complete, "ceb": gen_ceb, "gb": gen_gb}
    rows = []
    for family in families:
        for n in range(2, max_n + 1):
            if family == "gb" and (n % 2 or n < 4):
                continue
            g = builders[family](n)
            for c in range(1, n):
                rows.append({"family": family, "n": n, "c": c, "r_star": brute_r_star(g, c)})
    return rows


def write_golden(path, rows: Iterable[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=GOLDEN_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def read_golden(path) -> list[dict]:
    with open(Path(path), newline="") as fh:
        return [
            {"family": row["family"], "n": int(row["n"]), "c": int(row["c"]), "r_star": int(row["r_star"])}
            for row in csv.DictReader(fh)
        ]
