"""
Degree divergence and proximity graphs
======================================

Builds a small indoor proximity graph, where walls halve the radio range,
then tracks how far the degree distribution drifts from the intact one as
random edges are removed.
"""
from fragility.attack import random_removal_trajectory
from fragility.generators import Device, LayoutScene, gen_proximity
from fragility.metrics import average_trajectories, divergence_trajectory

devices = [Device(i, x, y) for i, (x, y) in enumerate(
    [(0, 0), (4, 1), (8, 0), (2, 5), (6, 6), (9, 4), (12, 2), (14, 6)]
)]
# One wall between the left and right halves of the room.
scene = LayoutScene(devices, walls=[((7.0, -1.0), (7.0, 3.0))], base_range=10)
g = gen_proximity(scene)
print(f"proximity graph: n={g.n} m={g.m}")

curves = []
for seed in range(20):
    traj = divergence_trajectory(g, random_removal_trajectory(g, seed))
    curves.append([h for _, h in traj])
mean = average_trajectories(curves)
for step in range(0, len(mean), max(1, len(mean) // 6)):
    print(f"after {step + 1:2d} removals: H = {mean[step]:.3f}")
