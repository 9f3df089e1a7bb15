# %% [markdown]
# # Graphs, instance metadata and vertex connectivity
#
# Every computation starts from a connected simple graph with vertex costs.
# This demo builds a few graphs, reads one back from DIMACS text and looks at
# the numbers that later drive the solver: the shore bound beta and the
# vertex-disjoint path counts of non-adjacent pairs.

# %%
from vsp.connectivity import alpha_table, min_vertex_cut
from vsp.graph import meta, parse_dimacs_col, write_dimacs_col
from vsp.instances import cycle_graph, mycielski, queen

g = mycielski(4)
info = meta(g)
print(f"myciel4: n={info.n} e={info.e} d={info.d:.2f} beta={info.beta}")

# %% [markdown]
# DIMACS COLOR text round-trips: ids are 1-based on disk and 0-based in memory.

# %%
text = write_dimacs_col(cycle_graph(5), "a five-cycle")
print(text)
again = parse_dimacs_col(text)
print(again.edge_list())

# %% [markdown]
# `alpha_table` runs one max flow per non-adjacent pair on the split network
# (each vertex becomes an arc of capacity one). Its minimum is a lower bound
# on the size of any separator.

# %%
table = alpha_table(g)
print("pairs:", len(table.alpha), "alpha_min:", table.alpha_min)
worst = min(table.alpha, key=table.alpha.get)
print("a pair attaining it:", worst, "cut:", sorted(min_vertex_cut(g, *worst)))

# %% [markdown]
# Queen graphs are much better connected, so alpha_min is large relative to n.

# %%
for k in (5, 6, 7):
    q = queen(k, k)
    print(f"queen{k}_{k}: n={q.n} alpha_min={alpha_table(q).alpha_min}")
