"""Vertex-disjoint path counts via node splitting and push-relabel max flow."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import AdjacentPairError, CompleteGraphError, DisconnectedGraphError, GraphError
from .graph import Graph

__all__ = [
    "AlphaTable",
    "FlowResult",
    "SplitNetwork",
    "alpha_min",
    "alpha_pair",
    "alpha_subgraph",
    "alpha_table",
    "build_split_network",
    "max_flow",
    "min_vertex_cut",
]


@dataclass
class SplitNetwork:
    """Flow network for counting internally vertex-disjoint s-t paths.

    Node 0 is the source, node 1 the sink. Internal vertex ``internal[k]``
    owns an in-copy ``2 + 2k`` and an out-copy ``3 + 2k`` joined by a unit
    arc. Arcs are stored in residual pairs: arc ``a`` and its reverse
    ``a ^ 1``.
    """

    num_nodes: int
    source: int
    sink: int
    internal: list[int]
    head: list[int]
    cap: list[int]
    out: list[list[int]]
    unit_arc: dict[int, int]
    infinity: int

    @property
    def arcs(self) -> list[tuple[int, int, int]]:
        """Forward arcs as ``(tail, head, capacity)``."""
        tail = [0] * len(self.head)
        for u, arcs in enumerate(self.out):
            for a in arcs:
                tail[a] = u
        return [(tail[a], self.head[a], self.cap[a]) for a in range(0, len(self.head), 2)]


def build_split_network(g: Graph, s: int, t: int) -> SplitNetwork:
    if s == t:
        raise ValueError("source and sink coincide")
    if g.has_edge(s, t):
        raise AdjacentPairError(f"vertices {s} and {t} are adjacent")
    internal = [v for v in range(g.n) if v != s and v != t]
    num_nodes = 2 * len(internal) + 2
    in_node = {s: 0, t: 1}
    out_node = {s: 0, t: 1}
    for k, v in enumerate(internal):
        in_node[v] = 2 + 2 * k
        out_node[v] = 3 + 2 * k
    inf = max(g.n, 1)
    head: list[int] = []
    cap: list[int] = []
    out: list[list[int]] = [[] for _ in range(num_nodes)]

    def add(u, v, c):
        out[u].append(len(head))
        head.append(v)
        cap.append(c)
        out[v].append(len(head))
        head.append(u)
        cap.append(0)

    unit_arc = {}
    for v in internal:
        unit_arc[v] = len(head)
        add(in_node[v], out_node[v], 1)
    for i, j in g.edge_list():
        if i != t and j != s:
            add(out_node[i], in_node[j], inf)
        if j != t and i != s:
            add(out_node[j], in_node[i], inf)
    return SplitNetwork(num_nodes, 0, 1, internal, head, cap, out, unit_arc, inf)


@dataclass(frozen=True)
class FlowResult:
    value: int
    cut: frozenset[int] = field(default_factory=frozenset)


def max_flow(net: SplitNetwork) -> FlowResult:
    """FIFO push-relabel with gap relabeling and periodic global relabeling.

    Returns the flow value and the canonical minimum vertex cut: internal
    vertices whose unit arc leaves the residual-reachable set of the source.
    """
    N = net.num_nodes
    s, t = net.source, net.sink
    head = net.head
    cap = list(net.cap)
    out = net.out
    excess = [0] * N
    height = [0] * N
    count = [0] * (2 * N + 1)
    cur = [0] * N
    in_queue = [False] * N
    queue: deque[int] = deque()

    def global_relabel():
        for v in range(N):
            height[v] = 2 * N
        height[t] = 0
        bfs = deque([t])
        while bfs:
            w = bfs.popleft()
            hw = height[w] + 1
            for a in out[w]:
                v = head[a]
                if cap[a ^ 1] > 0 and height[v] == 2 * N and v != s:
                    height[v] = hw
                    bfs.append(v)
        height[s] = N
        bfs.append(s)
        while bfs:
            w = bfs.popleft()
            hw = height[w] + 1
            for a in out[w]:
                v = head[a]
                if cap[a ^ 1] > 0 and height[v] == 2 * N:
                    height[v] = hw
                    bfs.append(v)
        for k in range(len(count)):
            count[k] = 0
        for v in range(N):
            count[height[v]] += 1
            cur[v] = 0

    for a in out[s]:
        c = cap[a]
        if c > 0:
            v = head[a]
            cap[a] = 0
            cap[a ^ 1] += c
            excess[v] += c
            excess[s] -= c
    global_relabel()
    for v in range(N):
        if excess[v] > 0 and v != s and v != t:
            queue.append(v)
            in_queue[v] = True

    relabels = 0
    while queue:
        u = queue.popleft()
        in_queue[u] = False
        arcs = out[u]
        deg = len(arcs)
        while excess[u] > 0:
            if cur[u] == deg:
                # relabel
                old = height[u]
                best = 2 * N
                for a in arcs:
                    if cap[a] > 0:
                        h = height[head[a]]
                        if h < best:
                            best = h
                new = min(best + 1, 2 * N)
                count[old] -= 1
                height[u] = new
                count[new] += 1
                cur[u] = 0
                relabels += 1
                if count[old] == 0 and old < N:
                    # gap: nothing below can reach the sink through heights in (old, N)
                    for v in range(N):
                        hv = height[v]
                        if old < hv < N:
                            count[hv] -= 1
                            height[v] = N + 1
                            count[N + 1] += 1
                            cur[v] = 0
                if relabels % N == 0:
                    global_relabel()
                continue
            a = arcs[cur[u]]
            r = cap[a]
            if r > 0:
                v = head[a]
                if height[u] == height[v] + 1:
                    delta = excess[u] if excess[u] < r else r
                    cap[a] = r - delta
                    cap[a ^ 1] += delta
                    excess[u] -= delta
                    excess[v] += delta
                    if v != s and v != t and not in_queue[v]:
                        in_queue[v] = True
                        queue.append(v)
                    if excess[u] == 0:
                        break
            cur[u] += 1

    # residual reachability from the source
    seen = [False] * N
    seen[s] = True
    bfs = deque([s])
    while bfs:
        w = bfs.popleft()
        for a in out[w]:
            v = head[a]
            if cap[a] > 0 and not seen[v]:
                seen[v] = True
                bfs.append(v)
    cut = frozenset(
        v for v, a in net.unit_arc.items() if seen[head[a ^ 1]] and not seen[head[a]]
    )
    return FlowResult(excess[t], cut)


def alpha_pair(g: Graph, i: int, j: int) -> int:
    """Maximum number of internally vertex-disjoint i-j paths."""
    if i == j:
        raise ValueError("alpha is defined for distinct vertices")
    return max_flow(build_split_network(g, i, j)).value


def min_vertex_cut(g: Graph, i: int, j: int) -> frozenset[int]:
    """A minimum set of vertices separating non-adjacent ``i`` and ``j``."""
    return max_flow(build_split_network(g, i, j)).cut


@dataclass(frozen=True)
class AlphaTable:
    alpha: dict[tuple[int, int], int]
    alpha_min: int

    def __getitem__(self, pair: tuple[int, int]) -> int:
        i, j = pair
        return self.alpha[(i, j) if i < j else (j, i)]

    def __len__(self) -> int:
        return len(self.alpha)

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.alpha)


def _check_alpha_input(g: Graph) -> None:
    if g.n < 3 or g.is_complete():
        raise CompleteGraphError("graph has no non-adjacent vertex pair")
    if not g.is_connected():
        raise DisconnectedGraphError("alpha values need a connected graph")


def _pair_values(args):
    g, pairs = args
    return [alpha_pair(g, i, j) for i, j in pairs]


def alpha_table(g: Graph, jobs: int = 1) -> AlphaTable:
    """alpha for every non-adjacent pair, in lexicographic order."""
    _check_alpha_input(g)
    pairs = g.non_adjacent_pairs()
    if jobs > 1 and len(pairs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [pairs[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_pair_values, [(g, c) for c in chunks]))
        alpha = {}
        for chunk, vals in zip(chunks, results):
            alpha.update(zip(chunk, vals))
        alpha = dict(sorted(alpha.items()))
    else:
        alpha = {p: alpha_pair(g, *p) for p in pairs}
    return AlphaTable(alpha, min(alpha.values()))


def alpha_min(g: Graph) -> int:
    """Minimum alpha over non-adjacent pairs; stops early on a value of 1."""
    _check_alpha_input(g)
    best = None
    for i, j in g.non_adjacent_pairs():
        v = alpha_pair(g, i, j)
        if best is None or v < best:
            best = v
            if best == 1:
                break
    return best


def alpha_subgraph(g: Graph, vertices: Iterable[int], limit: int | None = None) -> int:
    """Minimum alpha over non-adjacent pairs of the subgraph induced by ``vertices``.

    With ``limit`` the result is ``min(alpha, limit)``; a limit of 1 needs no
    flow computation since the induced subgraph is connected.
    """
    sub, _ = g.induced_subgraph(vertices)
    if not sub.is_connected():
        raise DisconnectedGraphError("induced subgraph is disconnected")
    if sub.n < 3 or sub.is_complete():
        raise GraphError("induced subgraph is a clique")
    if limit is not None and limit <= 1:
        return min(1, limit)
    best = None
    for i, j in sub.non_adjacent_pairs():
        v = alpha_pair(sub, i, j)
        if best is None or v < best:
            best = v
            if best == 1:
                break
    if limit is not None:
        best = min(best, limit)
    return best
