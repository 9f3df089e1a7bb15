# %% [markdown]
# # Checking polyhedral claims by enumeration
#
# For tiny graphs every ab-separator can be listed, which makes it possible to
# compute the exact dimension of their convex hull and to test inequalities
# against every point.

# %%
from vsp.instances import complete_bipartite, connected_graphs, cycle_graph
from vsp.polytope import (
    affine_dimension,
    correspondence_report,
    enumerate_ab_separators,
    expected_dimension,
    fractional_vertices,
    check_edge_system,
    vertex_to_edge,
)

g = cycle_graph(6)
ps = enumerate_ab_separators(g, 0, 3)
print(len(ps), "separators; dimension", affine_dimension(ps), "formula", expected_dimension(g, 0, 3))

# %% [markdown]
# The closed form 2(n-2) - deg(a) - deg(b) holds on every connected graph with
# up to six vertices.

# %%
cases = bad = 0
for n in range(3, 7):
    for h in connected_graphs(n):
        for a, b in h.non_adjacent_pairs():
            cases += 1
            bad += affine_dimension(enumerate_ab_separators(h, a, b)) != expected_dimension(h, a, b)
print(cases, "cases,", bad, "exceptions")

# %% [markdown]
# In edge space a separator becomes the set of edges with exactly one end in
# C. Those vectors satisfy the chain and parity inequalities.

# %%
p = ps.partitions()[5]
chi = vertex_to_edge(g, p)
print(p, chi.vector(), chi.labels)
print(check_edge_system(g, 0, 3, chi).summary())

# %% [markdown]
# Integral solutions of the edge system match separator images, except for
# images that only exist without the shore bound.

# %%
rep = correspondence_report(g, 0, 3, beta=2)
print(rep.as_dict())

# %% [markdown]
# The relaxed edge system has fractional vertices, found here with random objectives.

# %%
for pt in fractional_vertices(complete_bipartite(2, 3), 0, 1, trials=15)[:3]:
    print([str(v) for v in pt])
