# %% [markdown]
# # Two integer formulations and their cuts
#
# The pair-fixed model pins `a` in A and `b` in B and keeps columns for the
# remaining vertices. The full model gives every vertex an A column and a B
# column and adds cardinality rows built from alpha_min.

# %%
import numpy as np

from vsp.connectivity import alpha_table
from vsp.graph import Graph
from vsp.instances import path_graph
from vsp.lp import solve_lp
from vsp.model import (
    build_ab_model,
    build_full_model,
    separate_alpha_pairs,
    separate_paths,
    separate_subgraphs,
    subgraph_candidates,
)

m = build_ab_model(path_graph(5), 0, 4, beta=3)
print(m.to_lp_text())

# %% [markdown]
# The LP relaxation of the full model is usually fractional. A separation round
# looks for violated alpha-pair, path and subgraph inequalities at the LP
# point. Adding them never raises the bound. At the root it often stays put,
# because the cardinality row built from alpha_min already caps the objective
# and the LP has many optimal vertices; the cuts pay off deeper in the tree.

# %%
g = Graph(8, [(0, 1), (0, 3), (0, 4), (1, 2), (1, 3), (1, 5), (1, 6), (1, 7),
              (2, 6), (3, 6), (4, 6), (4, 7)])
beta = 3
table = alpha_table(g)
full = build_full_model(g, beta=beta, alpha_min=table.alpha_min)
root = solve_lp(full.to_lp())
print("alpha_min", table.alpha_min, "root bound", round(root.value, 4))
print("fractional columns:", int(np.sum(np.abs(root.x - np.round(root.x)) > 1e-6)))

cuts = (separate_alpha_pairs(full, root.x, table, limit=10)
        + separate_paths(full, root.x, limit=10)
        + separate_subgraphs(full, root.x, subgraph_candidates(g, beta, table.alpha_min)))
for c in cuts:
    print(f"{c.origin:<10} violation {c.violation(root.x):.3f}")
full.cuts.add(cuts)
again = solve_lp(full.to_lp(), warm=root.basis)
print(f"{len(cuts)} cuts -> bound {again.value:.4f} ({again.iterations} warm iterations)")

# %% [markdown]
# Integral points decode into partitions; `encode` goes the other way.

# %%
from vsp.solver import brute_force

best = brute_force(g, beta).partition
if len(best.A) > len(best.B):
    best = best.swapped()
x = full.encode(best)
print(full.decode(x), "objective", full.objective_value(x))
