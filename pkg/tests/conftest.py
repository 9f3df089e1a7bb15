"""Shared fixtures and independent oracles.

Nothing here reuses the package's flow or enumeration code: the oracles are
deliberately naive so that agreement means something.
"""

from __future__ import annotations

import itertools
import random
from collections import deque

import pytest

from vsp.graph import Graph
from vsp.instances import random_connected_graph


def reachable(g: Graph, s: int, removed: set[int]) -> set[int]:
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in seen and w not in removed:
                seen.add(w)
                queue.append(w)
    return seen


def brute_min_vertex_cut(g: Graph, s: int, t: int) -> int:
    """Smallest |S|, S in V - {s, t}, whose removal disconnects s from t."""
    others = [v for v in range(g.n) if v not in (s, t)]
    for k in range(len(others) + 1):
        for S in itertools.combinations(others, k):
            if t not in reachable(g, s, set(S)):
                return k
    raise AssertionError("s and t cannot be separated (adjacent?)")


def edmonds_karp_paths(g: Graph, s: int, t: int) -> int:
    """Vertex-disjoint s-t paths by BFS augmentation on a dict-based split network."""
    cap: dict[tuple, int] = {}
    nbrs: dict[tuple, set] = {}

    def arc(u, v, c):
        cap[(u, v)] = cap.get((u, v), 0) + c
        cap.setdefault((v, u), 0)
        nbrs.setdefault(u, set()).add(v)
        nbrs.setdefault(v, set()).add(u)

    def node_in(v):
        return ("v", v) if v in (s, t) else ("in", v)

    def node_out(v):
        return ("v", v) if v in (s, t) else ("out", v)

    big = g.n + 1
    for v in range(g.n):
        if v not in (s, t):
            arc(("in", v), ("out", v), 1)
    for i, j in g.edge_list():
        arc(node_out(i), node_in(j), big)
        arc(node_out(j), node_in(i), big)
    src, dst = ("v", s), ("v", t)
    flow = 0
    while True:
        pred = {src: None}
        queue = deque([src])
        while queue and dst not in pred:
            u = queue.popleft()
            for w in nbrs.get(u, ()):
                if w not in pred and cap[(u, w)] > 0:
                    pred[w] = u
                    queue.append(w)
        if dst not in pred:
            return flow
        path = []
        w = dst
        while pred[w] is not None:
            path.append((pred[w], w))
            w = pred[w]
        delta = min(cap[e] for e in path)
        for u, w in path:
            cap[(u, w)] -= delta
            cap[(w, u)] += delta
        flow += delta


def naive_partitions(g: Graph, beta: int):
    """Every feasible (A, B, C) by scanning all 3^n labelings."""
    for lab in itertools.product((0, 1, 2), repeat=g.n):
        A = {v for v in range(g.n) if lab[v] == 1}
        B = {v for v in range(g.n) if lab[v] == 2}
        if not A or not B or len(A) > beta or len(B) > beta:
            continue
        if any((i in A and j in B) or (i in B and j in A) for i, j in g.edge_list()):
            continue
        yield A, B


def naive_ab_points(g: Graph, a: int, b: int, beta: int) -> set[tuple[int, ...]]:
    """ab-separator incidence vectors by scanning all 3^(n-2) labelings of the free vertices."""
    free = [v for v in range(g.n) if v not in (a, b)]
    k = len(free)
    out = set()
    for lab in itertools.product((0, 1, 2), repeat=k):
        A = {a} | {free[t] for t in range(k) if lab[t] == 1}
        B = {b} | {free[t] for t in range(k) if lab[t] == 2}
        if len(A) > beta or len(B) > beta:
            continue
        if any((i in A and j in B) or (i in B and j in A) for i, j in g.edge_list()):
            continue
        out.add(tuple([int(lab[t] == 1) for t in range(k)] + [int(lab[t] == 2) for t in range(k)]))
    return out


def random_graphs(count: int, n_lo: int, n_hi: int, seed: int, dens=(0.15, 0.7)):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(n_lo, n_hi)
        g = random_connected_graph(n, rng.uniform(*dens), rng)
        if not g.is_complete():
            out.append(g)
    return out


@pytest.fixture
def rng():
    return random.Random(12345)


# ---------------------------------------------------------------- acceptance summary

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    detail = dict(item.user_properties).get("detail", "")
    if rep.failed:
        msg = str(call.excinfo.value).strip().splitlines() if call.excinfo else []
        reason = msg[0] if msg else "error"
        detail = f"{detail} | {reason}" if detail else reason
    _ACCEPTANCE[mark.args[0]] = ("PASS" if rep.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        verdict, detail = _ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {verdict}  {detail}")
