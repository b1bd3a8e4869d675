"""Undirected simple graphs, perturbed-graph state and component bookkeeping.

A :class:`Graph` is immutable once built. Edges carry stable integer ids in
``[0, m)`` assigned in order of first appearance. An :class:`AttackState`
tracks which of those edges are still present; everything that removes or
restores edges works on a state and never touches the graph.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import GraphError, InputFormatError


class Graph:
    """Immutable undirected simple graph on nodes ``0..n-1``."""

    __slots__ = ("n", "edges", "adjacency", "src", "dst", "_index")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]]):
        self.n = int(n)
        self.edges: tuple[tuple[int, int], ...] = tuple(edges)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for eid, (u, v) in enumerate(self.edges):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        self.adjacency = tuple(tuple(a) for a in adj)
        self.src = np.fromiter((u for u, _ in self.edges), dtype=np.int64, count=len(self.edges))
        self.dst = np.fromiter((v for _, v in self.edges), dtype=np.int64, count=len(self.edges))
        self.src.setflags(write=False)
        self.dst.setflags(write=False)
        self._index = {e: i for i, e in enumerate(self.edges)}

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int:
        """Return the id of edge ``{u, v}``; raises ``KeyError`` if absent."""
        return self._index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    def incident(self, node: int) -> tuple[int, ...]:
        """Edge ids incident to ``node`` in the original graph."""
        return tuple(eid for _, eid in self.adjacency[node])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from node pairs.

    Pairs are normalized to ``u < v`` and duplicates collapse onto the id of
    their first occurrence. Self-loops and out-of-range endpoints raise
    :class:`GraphError`.
    """
    n = int(n)
    if n < 0:
        raise GraphError(f"node count must be non-negative, got {n}")
    seen: dict[tuple[int, int], None] = {}
    for pair in pairs:
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise GraphError(f"self-loop {pair!r} not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {pair!r} has endpoint outside [0, {n})")
        key = (u, v) if u < v else (v, u)
        seen.setdefault(key, None)
    return Graph(n, list(seen))


@dataclass(frozen=True)
class RemovalRecord:
    """One step of an attack trajectory."""

    step: int
    edge_id: int
    lcc_size: int
    score: Optional[float] = None


class AttackState:
    """A perturbed graph ``G'(r)``: the base graph with a mask of present edges."""

    def __init__(self, base: Graph, present: Optional[np.ndarray] = None):
        self.base = base
        if present is None:
            present = np.ones(base.m, dtype=bool)
        else:
            present = np.array(present, dtype=bool)
            if present.shape != (base.m,):
                raise GraphError("present mask must have one entry per edge")
        self.present = present
        self.trajectory: list[RemovalRecord] = []

    @property
    def removed_count(self) -> int:
        return int(self.base.m - np.count_nonzero(self.present))

    r = removed_count

    def removed_ids(self) -> np.ndarray:
        return np.flatnonzero(~self.present)

    def present_ids(self) -> np.ndarray:
        return np.flatnonzero(self.present)

    def remove(self, eid: int, score: Optional[float] = None) -> RemovalRecord:
        """Remove a present edge and append a trajectory record."""
        if not self.present[eid]:
            raise GraphError(f"edge {eid} already removed")
        self.present[eid] = False
        rec = RemovalRecord(len(self.trajectory) + 1, int(eid), lcc_size(self), score)
        self.trajectory.append(rec)
        return rec

    def restore(self, eid: int) -> None:
        self.present[eid] = True

    def copy(self) -> "AttackState":
        new = AttackState(self.base, self.present.copy())
        new.trajectory = list(self.trajectory)
        return new

    def degrees(self) -> np.ndarray:
        """Current degree of every node counting present edges only."""
        g = self.base
        mask = self.present
        return np.bincount(g.src[mask], minlength=g.n) + np.bincount(g.dst[mask], minlength=g.n)

    def __repr__(self):
        return f"AttackState({self.base!r}, r={self.removed_count})"


@dataclass(frozen=True)
class ComponentView:
    labels: np.ndarray
    sizes: np.ndarray
    lcc_id: int
    lcc_size: int

    def members(self, label: int) -> np.ndarray:
        return np.flatnonzero(self.labels == label)

    def lcc_nodes(self) -> np.ndarray:
        return self.members(self.lcc_id)

    @property
    def count(self) -> int:
        return len(self.sizes)


def _label_components(n: int, src: np.ndarray, dst: np.ndarray) -> ComponentView:
    # Union-find that always hangs the larger root under the smaller one, so
    # every root is the minimum node id of its component.
    parent = list(range(n))
    for u, v in zip(src.tolist(), dst.tolist()):
        while parent[u] != u:
            parent[u] = u = parent[parent[u]]
        while parent[v] != v:
            parent[v] = v = parent[parent[v]]
        if u < v:
            parent[v] = u
        elif v < u:
            parent[u] = v
    roots = np.empty(n, dtype=np.int64)
    for x in range(n):
        r = x
        while parent[r] != r:
            r = parent[r]
        roots[x] = r
    if n == 0:
        return ComponentView(roots, roots.copy(), -1, 0)
    reps, labels = np.unique(roots, return_inverse=True)
    sizes = np.bincount(labels, minlength=len(reps))
    lcc_id = int(np.argmax(sizes))
    return ComponentView(labels, sizes, lcc_id, int(sizes[lcc_id]))


def components(state: AttackState) -> ComponentView:
    """Connected components over the present edges.

    Isolated nodes form singleton components, so an edgeless graph has
    ``lcc_size == 1``. Ties for the largest component go to the one holding
    the smallest node id.
    """
    g = state.base
    mask = state.present
    return _label_components(g.n, g.src[mask], g.dst[mask])


def graph_components(g: Graph) -> ComponentView:
    return _label_components(g.n, g.src, g.dst)


def lcc_size(state: AttackState) -> int:
    return components(state).lcc_size


def degree_histogram(state: AttackState) -> dict[int, int]:
    """Map degree -> number of nodes, over all nodes including degree 0."""
    counts = Counter(int(d) for d in state.degrees())
    return dict(sorted(counts.items()))


# -- edge-list files --------------------------------------------------------

_N_HEADER = re.compile(r"^#\s*n\s*=\s*(\d+)\s*$")


def parse_edgelist(text: str) -> Graph:
    """Parse the whitespace edge-list format.

    Lines starting with ``#`` are comments, except that ``# n=<int>`` fixes the
    node count. Without that header ``n`` is one more than the largest id.
    """
    n_header = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _N_HEADER.match(line)
            if match:
                n_header = int(match.group(1))
            continue
        fields = line.split()
        if len(fields) != 2:
            raise InputFormatError(f"line {lineno}: expected two node ids, got {raw!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise InputFormatError(f"line {lineno}: non-integer node id in {raw!r}") from None
        if u < 0 or v < 0:
            raise InputFormatError(f"line {lineno}: negative node id in {raw!r}")
        pairs.append((u, v))
    n = n_header if n_header is not None else (max((max(p) for p in pairs), default=-1) + 1)
    try:
        return build_graph(n, pairs)
    except GraphError as exc:
        raise InputFormatError(str(exc)) from exc


def read_edgelist(path) -> Graph:
    return parse_edgelist(Path(path).read_text())


def format_edgelist(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"# n={g.n}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def write_edgelist(g: Graph, path, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_edgelist(g, comments))
