"""Deterministic instance generators.

The Mycielski and queen families reproduce the DIMACS coloring benchmarks
``mycielK`` and ``queenR_C`` up to vertex numbering.
"""

from __future__ import annotations

import random

from .graph import Graph


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, k) for k in range(1, leaves + 1)])


def complete_bipartite(p: int, q: int) -> Graph:
    return Graph(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def mycielskian(g: Graph) -> Graph:
    """Mycielski construction: shadow copy ``u_i`` of each ``v_i`` plus a hub."""
    n = g.n
    edges = list(g.edge_list())
    for i, j in g.edge_list():
        edges.append((i, n + j))
        edges.append((j, n + i))
    hub = 2 * n
    edges.extend((n + i, hub) for i in range(n))
    return Graph(2 * n + 1, edges)


def mycielski(k: int) -> Graph:
    """The DIMACS ``myciel{k}`` graph (myciel3 is the Groetzsch graph)."""
    if k < 2:
        raise ValueError("mycielski(k) needs k >= 2")
    g = Graph(2, [(0, 1)])
    for _ in range(k - 1):
        g = mycielskian(g)
    return g


def queen(rows: int, cols: int) -> Graph:
    """Queen graph: squares attacking each other along a row, column or diagonal."""
    def idx(r, c):
        return r * cols + c

    edges = []
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    for a, (r1, c1) in enumerate(cells):
        for r2, c2 in cells[a + 1:]:
            if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
                edges.append((idx(r1, c1), idx(r2, c2)))
    return Graph(rows * cols, edges)


def random_connected_graph(n: int, density: float, rng: random.Random | int | None = None) -> Graph:
    """Random spanning tree plus uniformly random extra edges up to ``density``."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for k in range(1, n):
        u, v = order[k], order[rng.randrange(k)]
        edges.add((min(u, v), max(u, v)))
    target = max(n - 1, round(density * n * (n - 1) / 2))
    rest = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    rng.shuffle(rest)
    edges.update(rest[: max(0, target - len(edges))])
    return Graph(n, edges)


def connected_graphs(n: int):
    """All connected graphs on ``n <= 7`` vertices up to isomorphism."""
    import networkx as nx

    if n > 7:
        raise ValueError("the graph atlas only covers n <= 7")
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == n and n > 0 and nx.is_connected(h):
            yield Graph(n, h.edges())
