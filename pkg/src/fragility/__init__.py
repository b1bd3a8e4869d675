"""Edge-removal fragility of undirected graphs.

Closed forms for complete, CEB and generalized-barbell graphs, a greedy +
rewiring + add-back estimator for arbitrary graphs, and brute-force oracles
for small instances.
"""
from .attack import (
    Strategy,
    greedy_edge_removal,
    greedy_until_lcc,
    random_removal_trajectory,
    score_edge_betweenness,
    score_min_degree,
)
from .closed_form import (
    edge_count,
    f_comp,
    fragility_exact,
    is_robust,
    r_star_ceb,
    r_star_complete,
)
from .estimator import batch_estimate, estimate_fragility, iterative_add_back, rewiring_removal
from .generators import GeneratorConfig, LayoutScene, gen_ceb, gen_complete, gen_gb, gen_proximity, generate
from .graph import AttackState, Graph, build_graph, components, degree_histogram, lcc_size, read_edgelist
from .metrics import hellinger

__version__ = "0.1.0"
