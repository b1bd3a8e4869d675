"""Graph families: complete, CEB, generalized barbell, ER/BA/WS and proximity graphs."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Optional

import networkx as nx
import numpy as np
from shapely.geometry import LineString, Point

from .errors import GraphError, InputFormatError
from .graph import Graph, build_graph

FAMILIES = ("complete", "ceb", "gb", "er", "ba", "ws", "proximity")


def gen_complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return build_graph(n, combinations(range(n), 2))


def gen_ceb(n: int) -> Graph:
    """Complete bipartite graph with parts of size ceil(n/2) and floor(n/2).

    Nodes ``0..ceil(n/2)-1`` form the first part.
    """
    if n < 2:
        raise GraphError(f"CEB graph needs n >= 2, got {n}")
    a = (n + 1) // 2
    return build_graph(n, ((i, j) for i in range(a) for j in range(a, n)))


def gen_gb(n: int) -> Graph:
    """Generalized barbell: two K_{n/2} joined by exactly n bridge edges.

    Node ``i`` of the first half links to nodes ``i`` and ``(i+1) mod n/2``
    of the second half.
    """
    if n < 4 or n % 2:
        raise GraphError(f"GB graph needs even n >= 4, got {n}")
    h = n // 2
    pairs = list(combinations(range(h), 2))
    pairs += [(h + i, h + j) for i, j in combinations(range(h), 2)]
    for i in range(h):
        pairs.append((i, h + i))
        pairs.append((i, h + (i + 1) % h))
    return build_graph(n, pairs)


def _from_networkx(nxg: nx.Graph, n: int) -> Graph:
    return build_graph(n, sorted(tuple(sorted(e)) for e in nxg.edges()))


def gen_er(n: int, p: float, seed: int) -> Graph:
    if n < 1 or not 0.0 <= p <= 1.0:
        raise GraphError(f"invalid ER parameters n={n}, p={p}")
    return _from_networkx(nx.gnp_random_graph(n, p, seed=seed), n)


def gen_ba(n: int, m_ba: int, seed: int) -> Graph:
    """Barabasi-Albert graph grown from an initial clique on ``m_ba + 1`` nodes.

    Each new node attaches to ``m_ba`` distinct existing nodes, so
    ``m = m_ba*(m_ba+1)/2 + (n - m_ba - 1)*m_ba``.
    """
    if m_ba < 1 or n <= m_ba:
        raise GraphError(f"invalid BA parameters n={n}, m_ba={m_ba}")
    seed_graph = nx.complete_graph(m_ba + 1)
    return _from_networkx(nx.barabasi_albert_graph(n, m_ba, seed=seed, initial_graph=seed_graph), n)


def gen_ws(n: int, k: int, p_ws: float, seed: int) -> Graph:
    if k % 2 or not 0 <= k < n or not 0.0 <= p_ws <= 1.0:
        raise GraphError(f"invalid WS parameters n={n}, k={k}, p={p_ws}")
    return _from_networkx(nx.watts_strogatz_graph(n, k, p_ws, seed=seed), n)


def trim_to_edge_count(g: Graph, target: int, seed: int) -> Graph:
    """Delete uniformly random edges until exactly ``target`` remain.

    Surviving edges keep their relative order, so ids are renumbered densely.
    """
    if target > g.m or target < 0:
        raise GraphError(f"cannot trim {g.m} edges to {target}")
    if target == g.m:
        return g
    rng = np.random.default_rng(seed)
    keep = np.sort(rng.choice(g.m, size=target, replace=False))
    return Graph(g.n, [g.edges[i] for i in keep])


def ba_edge_count(n: int, m_ba: int) -> int:
    return m_ba * (m_ba + 1) // 2 + (n - m_ba - 1) * m_ba


@dataclass(frozen=True)
class GeneratorConfig:
    family: str
    n: int
    p: float = 0.0
    m_ba: int = 4
    k: int = 8
    p_ws: float = 0.2
    target_edge_count: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES or self.family == "proximity":
            raise GraphError(f"unsupported generator family {self.family!r}")
        if self.n < 1:
            raise GraphError("n must be >= 1")
        if self.family == "ws" and (self.k % 2 or self.k >= self.n):
            raise GraphError("ws requires an even k < n")
        if self.target_edge_count is not None and self.target_edge_count > self.max_edges():
            raise GraphError(
                f"target_edge_count {self.target_edge_count} exceeds the maximum for {self.family}"
            )

    def max_edges(self) -> int:
        n = self.n
        if self.family == "ceb":
            return (n // 2) * ((n + 1) // 2)
        if self.family == "gb":
            return n * n // 4 + n // 2
        if self.family == "ba":
            return ba_edge_count(n, self.m_ba)
        if self.family == "ws":
            return n * self.k // 2
        return n * (n - 1) // 2

    def with_seed(self, seed: int) -> "GeneratorConfig":
        return GeneratorConfig(
            self.family, self.n, self.p, self.m_ba, self.k, self.p_ws, self.target_edge_count, seed
        )

    def describe(self) -> str:
        parts = [self.family, f"n={self.n}"]
        if self.family == "er":
            parts.append(f"p={self.p}")
        elif self.family == "ba":
            parts.append(f"m_ba={self.m_ba}")
        elif self.family == "ws":
            parts += [f"k={self.k}", f"p_ws={self.p_ws}"]
        if self.target_edge_count is not None:
            parts.append(f"trim={self.target_edge_count}")
        if self.family in ("er", "ba", "ws"):
            parts.append(f"seed={self.seed}")
        return ",".join(parts)


def generate(config: GeneratorConfig) -> Graph:
    """Build the graph described by ``config``.

    For ER with a target edge count and ``p == 0`` the edge probability is set
    just above ``target / C(n, 2)``; realizations short of the target are
    redrawn with the next seed from the same stream before trimming.
    """
    fam, n, seed = config.family, config.n, config.seed
    if fam == "complete":
        g = gen_complete(n)
    elif fam == "ceb":
        g = gen_ceb(n)
    elif fam == "gb":
        g = gen_gb(n)
    elif fam == "ba":
        g = gen_ba(n, config.m_ba, seed)
    elif fam == "ws":
        g = gen_ws(n, config.k, config.p_ws, seed)
    else:
        target = config.target_edge_count
        p = config.p
        if target is not None and p == 0.0:
            pairs = n * (n - 1) // 2
            p = min(1.0, (target + 3 * math.sqrt(target) + 1) / pairs) if pairs else 0.0
        rng = np.random.default_rng(seed)
        g = gen_er(n, p, int(rng.integers(2**63)))
        while target is not None and g.m < target:
            g = gen_er(n, p, int(rng.integers(2**63)))
    if config.target_edge_count is not None:
        g = trim_to_edge_count(g, config.target_edge_count, seed)
    return g


# -- proximity graphs -------------------------------------------------------


@dataclass(frozen=True)
class Device:
    id: int
    x: float
    y: float


@dataclass(frozen=True)
class LayoutScene:
    """Device positions (meters) and wall segments for a proximity network.

    Node ``i`` of the generated graph is the ``i``-th device in ``devices``.
    """

    devices: tuple[Device, ...]
    walls: tuple[tuple[tuple[float, float], tuple[float, float]], ...] = ()
    base_range: float = 10.0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        ids = [d.id for d in self.devices]
        if len(set(ids)) != len(ids):
            raise InputFormatError("device ids must be unique")
        if not self.base_range > 0:
            raise InputFormatError("base_range must be positive")


def parse_scene(obj: dict) -> LayoutScene:
    try:
        devices = tuple(Device(int(d["id"]), float(d["x"]), float(d["y"])) for d in obj.get("devices", []))
        walls = tuple(
            ((float(w["x1"]), float(w["y1"])), (float(w["x2"]), float(w["y2"]))) for w in obj.get("walls", [])
        )
        base_range = float(obj.get("base_range", 10.0))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputFormatError(f"malformed layout scene: {exc}") from exc
    return LayoutScene(devices, walls, base_range)


def load_scene(path) -> LayoutScene:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(obj, dict):
        raise InputFormatError(f"{path}: layout scene must be a JSON object")
    return parse_scene(obj)


def scene_to_json(scene: LayoutScene) -> dict:
    return {
        "base_range": scene.base_range,
        "devices": [{"id": d.id, "x": d.x, "y": d.y} for d in scene.devices],
        "walls": [{"x1": a[0], "y1": a[1], "x2": b[0], "y2": b[1]} for a, b in scene.walls],
    }


def walls_crossed(a: tuple[float, float], b: tuple[float, float], walls) -> int:
    """Number of wall segments the sight line from ``a`` to ``b`` touches.

    Any contact counts, including grazing an endpoint or running along a
    wall, which errs toward disconnection.
    """
    sight = Point(a) if a == b else LineString([a, b])
    return sum(1 for w in walls if sight.intersects(LineString(w)))


def gen_proximity(scene: LayoutScene) -> Graph:
    """Connect devices whose distance is within ``base_range / 2**walls``."""
    pos = [(d.x, d.y) for d in scene.devices]
    pairs = []
    for i, j in combinations(range(len(pos)), 2):
        dist = math.dist(pos[i], pos[j])
        if dist > scene.base_range:
            continue
        w = walls_crossed(pos[i], pos[j], scene.walls)
        if dist <= scene.base_range / 2**w:
            pairs.append((i, j))
    return build_graph(len(pos), pairs)
