"""
Rewiring on a cycle
===================

Cutting three edges of an 8-cycle by betweenness leaves pieces of sizes
4, 2 and 2. Rewiring swaps removed edges for surviving ones and finds the
balanced 3, 3, 2 split without spending an extra removal.
"""
from fragility.attack import greedy_edge_removal
from fragility.estimator import rewiring_removal
from fragility.graph import build_graph, components

g = build_graph(8, [(i, (i + 1) % 8) for i in range(8)])
greedy = greedy_edge_removal(g, 3, "edge_betweenness")
print("greedy removed:", [g.edges[r.edge_id] for r in greedy.trajectory])
print("component sizes:", sorted(components(greedy).sizes.tolist()))

rewired = rewiring_removal(g, greedy, seed=0)
print("after rewiring removed:", [g.edges[e] for e in rewired.removed_ids()])
print("component sizes:", sorted(components(rewired).sizes.tolist()))
