"""Degree-distribution divergence along attack trajectories."""
from __future__ import annotations

import csv
from typing import Mapping, Sequence, Union

import numpy as np

from .graph import AttackState, Graph, RemovalRecord

HELLINGER_CONVENTION = "H(p,q) = sqrt(0.5 * sum((sqrt(p_i) - sqrt(q_i))**2)), range [0, 1]"


class DegreeDistribution:
    """Fraction of nodes at each degree 0..len-1."""

    def __init__(self, probs):
        probs = np.asarray(probs, dtype=float)
        if probs.ndim != 1 or (probs < 0).any() or abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError("a degree distribution needs non-negative entries summing to 1")
        self.probs = probs

    @classmethod
    def from_degrees(cls, degrees, n: int = None) -> "DegreeDistribution":
        degrees = np.asarray(degrees, dtype=np.int64)
        size = max(n if n is not None else len(degrees), int(degrees.max(initial=0)) + 1)
        return cls(np.bincount(degrees, minlength=size) / len(degrees))

    @classmethod
    def from_state(cls, state: AttackState) -> "DegreeDistribution":
        return cls.from_degrees(state.degrees(), state.base.n)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, float]) -> "DegreeDistribution":
        probs = np.zeros(max(mapping, default=0) + 1)
        for deg, p in mapping.items():
            probs[deg] = p
        return cls(probs)

    def __len__(self):
        return len(self.probs)


DistLike = Union[DegreeDistribution, Mapping[int, float], Sequence[float], np.ndarray]


def _coerce(p: DistLike) -> np.ndarray:
    if isinstance(p, DegreeDistribution):
        return p.probs
    if isinstance(p, Mapping):
        return DegreeDistribution.from_mapping(p).probs
    return DegreeDistribution(p).probs


def hellinger(p: DistLike, q: DistLike) -> float:
    """Hellinger distance between two distributions, zero-padding the shorter one."""
    a, b = _coerce(p), _coerce(q)
    size = max(len(a), len(b))
    a = np.pad(a, (0, size - len(a)))
    b = np.pad(b, (0, size - len(b)))
    return float(np.sqrt(0.5 * np.sum((np.sqrt(a) - np.sqrt(b)) ** 2)))


def divergence_trajectory(g: Graph, records: Sequence[RemovalRecord]) -> list[tuple[int, float]]:
    """Hellinger distance to the intact degree distribution after each removal."""
    deg = g.degrees()
    initial = DegreeDistribution.from_degrees(deg, g.n)
    out = []
    for rec in records:
        u, v = g.edges[rec.edge_id]
        deg[u] -= 1
        deg[v] -= 1
        out.append((rec.step, hellinger(initial, DegreeDistribution.from_degrees(deg, g.n))))
    return out


def average_trajectories(trajs: Sequence[Sequence[float]]) -> np.ndarray:
    """Pointwise mean; shorter runs are padded with their final value."""
    if not trajs:
        raise ValueError("need at least one trajectory")
    arrays = [np.asarray([t[1] if isinstance(t, tuple) else t for t in traj], dtype=float) for traj in trajs]
    length = max(len(a) for a in arrays)
    padded = [np.pad(a, (0, length - len(a)), mode="edge") if 0 < len(a) < length else a for a in arrays]
    if any(len(a) != length for a in padded):
        raise ValueError("cannot pad an empty trajectory")
    return np.mean(padded, axis=0)


DIVERGENCE_FIELDS = ("step", "hellinger", "lcc_size")


def write_divergence_csv(path, steps, hellinger_values, lcc_sizes) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(DIVERGENCE_FIELDS)
        for step, h, lcc in zip(steps, hellinger_values, lcc_sizes):
            lcc = int(lcc) if isinstance(lcc, (int, np.integer)) else repr(float(lcc))
            writer.writerow((int(step), repr(float(h)), lcc))
