"""MILP formulations of the vertex separator problem and their valid inequalities.

Two formulations share one representation:

* ``ab`` mode fixes two non-adjacent vertices ``a`` in A and ``b`` in B and
  keeps the variables ``x[i, 'a']``, ``x[i, 'b']`` of the remaining vertices;
* ``fictitious`` mode uses two artificial, isolated shore representatives and
  keeps both variables for every vertex of the graph.

``x[i, 'a'] = 1`` puts ``i`` in A, ``x[i, 'b'] = 1`` puts it in B, and a vertex
with both at zero is in the separator C.
"""

from __future__ import annotations

import heapq
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .connectivity import AlphaTable, alpha_subgraph
from .errors import AdjacentPairError, GraphError
from .graph import Graph, VertexPartition
from .lp import EQ, GE, LE, LpProblem

__all__ = [
    "CutPool",
    "LinearConstraint",
    "VspModel",
    "alpha_pair_inequalities",
    "build_ab_model",
    "build_full_model",
    "chain_inequality",
    "path_inequality",
    "separate_alpha_pairs",
    "separate_chain",
    "separate_paths",
    "separate_subgraphs",
    "subgraph_candidates",
    "subgraph_inequality",
]

VIOLATION_TOL = 1e-6
ORIGINS = ("base", "bound", "alpha_pair", "chain", "subgraph", "branch")


@dataclass(frozen=True)
class LinearConstraint:
    """``sum(coef * x[col]) (sense) rhs`` with exact rational coefficients."""

    terms: tuple[tuple[int, Fraction], ...]
    sense: str
    rhs: Fraction
    origin: str

    @classmethod
    def make(cls, terms: dict[int, object], sense: str, rhs, origin: str) -> LinearConstraint:
        if sense not in (LE, GE, EQ):
            raise ValueError(f"bad sense {sense!r}")
        if origin not in ORIGINS:
            raise ValueError(f"bad origin {origin!r}")
        items = tuple(sorted((int(k), Fraction(v)) for k, v in terms.items() if v != 0))
        return cls(items, sense, Fraction(rhs), origin)

    def signature(self) -> tuple:
        return (self.terms, self.sense, self.rhs)

    def activity(self, x) -> float:
        return float(sum(float(c) * x[j] for j, c in self.terms))

    def violation(self, x) -> float:
        """Amount by which ``x`` violates the constraint (<= 0 when satisfied)."""
        lhs = self.activity(x)
        r = float(self.rhs)
        if self.sense == LE:
            return lhs - r
        if self.sense == GE:
            return r - lhs
        return abs(lhs - r)

    def satisfied_exact(self, x: Sequence[int]) -> bool:
        lhs = sum(c * int(x[j]) for j, c in self.terms)
        if self.sense == LE:
            return lhs <= self.rhs
        if self.sense == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


class CutPool:
    """Deduplicated, insertion-ordered collection of cuts."""

    def __init__(self) -> None:
        self.cuts: list[LinearConstraint] = []
        self._seen: set[tuple] = set()

    def __len__(self) -> int:
        return len(self.cuts)

    def __iter__(self):
        return iter(self.cuts)

    def __contains__(self, c: LinearConstraint) -> bool:
        return c.signature() in self._seen

    def add(self, cuts: Iterable[LinearConstraint]) -> list[LinearConstraint]:
        """Insert new cuts in (origin, signature) order; return those actually added."""
        added = []
        for c in sorted(cuts, key=lambda c: (c.origin, c.signature())):
            sig = c.signature()
            if sig in self._seen:
                continue
            self._seen.add(sig)
            self.cuts.append(c)
            added.append(c)
        return added

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for c in self.cuts:
            out[c.origin] = out.get(c.origin, 0) + 1
        return out


class VspModel:
    """Columns, objective, base rows and cut pool of one formulation."""

    def __init__(self, g: Graph, mode: str, beta: int, alpha_min: int | None = None,
                 a: int | None = None, b: int | None = None) -> None:
        self.graph = g
        self.mode = mode
        self.beta = beta
        self.alpha_min = alpha_min
        self.a = a
        self.b = b
        if mode == "ab":
            self.free = [v for v in range(g.n) if v != a and v != b]
        else:
            self.free = list(range(g.n))
        k = len(self.free)
        # a-side block first, then b-side block
        self.col_names: list[tuple[int, str]] = (
            [(v, "a") for v in self.free] + [(v, "b") for v in self.free]
        )
        self.columns = {name: j for j, name in enumerate(self.col_names)}
        self.objective = [Fraction(g.cost[v]) for v in self.free] * 2
        self.lower = [0] * (2 * k)
        self.upper = [1] * (2 * k)
        self.constraints: list[LinearConstraint] = []
        self.cuts = CutPool()
        self._base_cache = None
        self._pool_cache = None

    # -- column helpers

    @property
    def num_cols(self) -> int:
        return len(self.col_names)

    def col(self, v: int, side: str) -> int:
        return self.columns[(v, side)]

    def linear(self, coeffs: dict[tuple[int, str], object]) -> tuple[dict[int, Fraction], Fraction]:
        """Translate ``{(vertex, side): coef}`` into column terms plus a constant.

        In ``ab`` mode the fixed vertices contribute constants: ``x[a,'a'] = 1``,
        ``x[a,'b'] = 0`` and symmetrically for ``b``.
        """
        terms: dict[int, Fraction] = {}
        const = Fraction(0)
        for (v, side), coef in coeffs.items():
            coef = Fraction(coef)
            if self.mode == "ab" and v in (self.a, self.b):
                if (v == self.a and side == "a") or (v == self.b and side == "b"):
                    const += coef
                continue
            j = self.columns[(v, side)]
            terms[j] = terms.get(j, Fraction(0)) + coef
        return terms, const

    def constraint(self, coeffs, sense, rhs, origin) -> LinearConstraint:
        terms, const = self.linear(coeffs)
        return LinearConstraint.make(terms, sense, Fraction(rhs) - const, origin)

    def add(self, coeffs, sense, rhs, origin) -> None:
        self.constraints.append(self.constraint(coeffs, sense, rhs, origin))

    # -- incidence vectors

    def encode(self, p: VertexPartition) -> np.ndarray:
        """Incidence vector of a partition (with ``a`` in A, ``b`` in B in ab mode)."""
        x = np.zeros(self.num_cols, dtype=np.int8)
        for v in p.A:
            if (v, "a") in self.columns:
                x[self.columns[(v, "a")]] = 1
        for v in p.B:
            if (v, "b") in self.columns:
                x[self.columns[(v, "b")]] = 1
        return x

    def decode(self, x) -> VertexPartition:
        """Partition read off an integral point; raises if ``x`` breaks a base row."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.num_cols,):
            raise ValueError("point has wrong dimension")
        if np.any(np.abs(x - np.round(x)) > 1e-6):
            raise ValueError("point is not integral")
        xi = np.round(x).astype(int)
        for c in self.constraints:
            if not c.satisfied_exact(xi):
                raise ValueError(f"point violates a {c.origin} constraint")
        k = len(self.free)
        A = {self.free[t] for t in range(k) if xi[t] == 1}
        B = {self.free[t] for t in range(k) if xi[k + t] == 1}
        if self.mode == "ab":
            A.add(self.a)
            B.add(self.b)
        if not A or not B:
            raise ValueError("decoded shore is empty")
        C = set(range(self.graph.n)) - A - B
        return VertexPartition.from_sets(A, B, C)

    def objective_value(self, x) -> float:
        return float(sum(float(c) * x[j] for j, c in enumerate(self.objective)))

    # -- LP boundary

    def _rows(self, rows: Sequence[LinearConstraint]):
        A = np.zeros((len(rows), self.num_cols))
        for r, c in enumerate(rows):
            for j, v in c.terms:
                A[r, j] = float(v)
        return A, [c.sense for c in rows], np.array([float(c.rhs) for c in rows])

    def _base_arrays(self):
        if self._base_cache is None or self._base_cache[3] != len(self.constraints):
            self._base_cache = (*self._rows(self.constraints), len(self.constraints))
        return self._base_cache[:3]

    def _pool_arrays(self):
        # the pool only grows, so extend the cached rows incrementally
        done = 0 if self._pool_cache is None else len(self._pool_cache[1])
        if self._pool_cache is None or done != len(self.cuts):
            A1, s1, b1 = self._rows(self.cuts.cuts[done:])
            if self._pool_cache is not None:
                A0, s0, b0 = self._pool_cache
                A1, s1, b1 = np.vstack([A0, A1]), s0 + s1, np.concatenate([b0, b1])
            self._pool_cache = (A1, s1, b1)
        return self._pool_cache

    def to_lp(self, cuts: Sequence[LinearConstraint] | None = None,
              lower=None, upper=None) -> LpProblem:
        """Relaxation with the base rows, ``cuts`` (default: the pool) and bounds."""
        A0, s0, b0 = self._base_arrays()
        if cuts is None:
            A1, s1, b1 = self._pool_arrays()
        else:
            A1, s1, b1 = self._rows(cuts)
        if s1:
            A = np.vstack([A0, A1])
            sense = s0 + s1
            b = np.concatenate([b0, b1])
        else:
            A, sense, b = A0, s0, b0
        lo = np.array(self.lower if lower is None else lower, dtype=float)
        hi = np.array(self.upper if upper is None else upper, dtype=float)
        c = np.array([float(v) for v in self.objective])
        return LpProblem(c, A, sense, b, lo, hi)

    def column_label(self, j: int) -> str:
        v, side = self.col_names[j]
        return f"x_{v + 1}_{side}"

    def to_lp_text(self, include_cuts: bool = True) -> str:
        """CPLEX-LP style dump for inspection with external solvers."""
        def expr(terms):
            parts = []
            for j, c in terms:
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                coef = "" if mag == 1 else f"{float(mag):g} "
                parts.append(f"{sign} {coef}{self.column_label(j)}")
            s = " ".join(parts) or "0"
            return s[2:] if s.startswith("+ ") else s

        out = io.StringIO()
        out.write(f"\\ vertex separator model, mode={self.mode}, beta={self.beta}")
        if self.alpha_min is not None:
            out.write(f", alpha_min={self.alpha_min}")
        out.write("\nMaximize\n obj: ")
        out.write(expr([(j, c) for j, c in enumerate(self.objective) if c != 0]))
        out.write("\nSubject To\n")
        rows = list(self.constraints) + (list(self.cuts) if include_cuts else [])
        for r, c in enumerate(rows, 1):
            out.write(f" {c.origin}_{r}: {expr(c.terms)} {c.sense} {float(c.rhs):g}\n")
        out.write("Bounds\n")
        for j in range(self.num_cols):
            out.write(f" {self.lower[j]} <= {self.column_label(j)} <= {self.upper[j]}\n")
        out.write("Binaries\n ")
        out.write(" ".join(self.column_label(j) for j in range(self.num_cols)))
        out.write("\nEnd\n")
        return out.getvalue()


# ---------------------------------------------------------------- formulations


def _edge_rows(m: VspModel) -> None:
    g = m.graph
    for i, j in g.edge_list():
        m.add({(i, "a"): 1, (j, "b"): 1}, LE, 1, "base")
        m.add({(j, "a"): 1, (i, "b"): 1}, LE, 1, "base")


def build_ab_model(g: Graph, a: int, b: int, beta: int) -> VspModel:
    """Formulation with ``a`` fixed in A and ``b`` fixed in B."""
    if a == b:
        raise ValueError("a and b must differ")
    if g.has_edge(a, b):
        raise AdjacentPairError(f"vertices {a} and {b} are adjacent")
    if beta < 1:
        raise GraphError("beta must be at least 1")
    m = VspModel(g, "ab", beta, a=a, b=b)
    for v in m.free:
        if g.has_edge(v, a):
            m.upper[m.col(v, "b")] = 0
        if g.has_edge(v, b):
            m.upper[m.col(v, "a")] = 0
    for i, j in g.edge_list():
        if i in (a, b) or j in (a, b):
            continue  # edges at a or b are the column fixings above
        m.add({(i, "a"): 1, (j, "b"): 1}, LE, 1, "base")
        m.add({(j, "a"): 1, (i, "b"): 1}, LE, 1, "base")
    for v in m.free:
        m.add({(v, "a"): 1, (v, "b"): 1}, LE, 1, "base")
    m.add({(v, "a"): 1 for v in m.free}, LE, beta - 1, "bound")
    m.add({(v, "b"): 1 for v in m.free}, LE, beta - 1, "bound")
    return m


def build_full_model(g: Graph, beta: int, alpha_min: int) -> VspModel:
    """Formulation with artificial shore representatives (all vertices free).

    Carries the cardinality bound ``|A| + |B| <= n - alpha_min`` and breaks the
    A/B symmetry with ``|A| <= floor((n - alpha_min) / 2)``.
    """
    if beta < 1:
        raise GraphError("beta must be at least 1")
    n = g.n
    m = VspModel(g, "fictitious", beta, alpha_min=alpha_min)
    for v in range(n):
        m.add({(v, "a"): 1, (v, "b"): 1}, LE, 1, "base")
    _edge_rows(m)
    both = {}
    for v in range(n):
        both[(v, "a")] = 1
        both[(v, "b")] = 1
    m.add(both, LE, n - alpha_min, "bound")
    sum_a = {(v, "a"): 1 for v in range(n)}
    sum_b = {(v, "b"): 1 for v in range(n)}
    m.add(sum_a, GE, 1, "bound")
    m.add(sum_a, LE, min((n - alpha_min) // 2, beta), "bound")
    m.add(sum_b, GE, 1, "bound")
    m.add(sum_b, LE, beta, "bound")
    return m


# ---------------------------------------------------------------- chains


def _check_path(g: Graph, path: Sequence[int]) -> None:
    if len(set(path)) != len(path):
        raise ValueError("path repeats a vertex")
    for u, v in zip(path, path[1:]):
        if not g.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge")


def chain_inequality(m: VspModel, path: Sequence[int]) -> LinearConstraint:
    """At least one internal vertex of an a-b path lies in the separator."""
    if m.mode != "ab":
        return path_inequality(m, path)
    path = list(path)
    _check_path(m.graph, path)
    if path[0] != m.a or path[-1] != m.b:
        raise ValueError("chain must run from a to b")
    internal = path[1:-1]
    if not internal:
        raise ValueError("degenerate chain without internal vertices")
    coeffs = {}
    for v in internal:
        coeffs[(v, "a")] = 1
        coeffs[(v, "b")] = 1
    return m.constraint(coeffs, LE, len(internal) - 1, "chain")


def path_inequality(m: VspModel, path: Sequence[int]) -> LinearConstraint:
    """Lifted chain inequality for the fictitious model.

    For a path from ``i`` to ``j``: ``x[i,a] + x[j,b] + sum_internal(x[k,a] + x[k,b])
    <= |internal| + 1``. With ``x[i,a] = x[j,b] = 1`` this is the chain
    inequality with ``i`` and ``j`` in the roles of ``a`` and ``b``.
    """
    path = list(path)
    _check_path(m.graph, path)
    if len(path) < 3:
        raise ValueError("path needs at least one internal vertex")
    i, j = path[0], path[-1]
    internal = path[1:-1]
    coeffs = {(i, "a"): 1, (j, "b"): 1}
    for v in internal:
        coeffs[(v, "a")] = 1
        coeffs[(v, "b")] = 1
    return m.constraint(coeffs, LE, len(internal) + 1, "chain")


def _vertex_dijkstra(g: Graph, source: int, weight: Sequence[float]):
    """Shortest paths where entering vertex v costs weight[v]; source is free."""
    dist = [float("inf")] * g.n
    pred = [-1] * g.n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v in sorted(g.adj[u]):
            nd = d + weight[v]
            if nd < dist[v] - 1e-15:
                dist[v] = nd
                pred[v] = u
                heapq.heappush(heap, (nd, v))
    return dist, pred


def _trace(pred: Sequence[int], v: int) -> list[int]:
    out = [v]
    while pred[out[-1]] >= 0:
        out.append(pred[out[-1]])
    return out[::-1]


def _point(m: VspModel, x) -> tuple[list[float], list[float]]:
    """Per-vertex values of x[v,'a'], x[v,'b'] (fixed vertices filled in)."""
    n = m.graph.n
    xa = [0.0] * n
    xb = [0.0] * n
    for (v, side), j in m.columns.items():
        (xa if side == "a" else xb)[v] = float(x[j])
    if m.mode == "ab":
        xa[m.a] = 1.0
        xb[m.b] = 1.0
    return xa, xb


def _best_path_to(g, dist, pred, target):
    """Cheapest path ending at ``target`` whose last internal vertex is a neighbor."""
    best, best_u = float("inf"), -1
    for u in sorted(g.adj[target]):
        if dist[u] < best - 1e-15:
            best, best_u = dist[u], u
    if best_u < 0:
        return None, best
    path = _trace(pred, best_u)
    if target in path:
        path = path[: path.index(target)]
    return path + [target], best


def separate_chain(m: VspModel, x, tol: float = VIOLATION_TOL) -> LinearConstraint | None:
    """Most violated chain inequality of an ``ab`` model, or ``None``.

    Internal vertex weights ``1 - x[v,a] - x[v,b]`` (clamped at 0) turn the
    search into a shortest a-b path; the inequality is violated exactly when
    that path weighs less than 1.
    """
    if m.mode != "ab":
        raise ValueError("chain separation needs an ab model; use separate_paths")
    g = m.graph
    xa, xb = _point(m, x)
    w = [max(0.0, 1.0 - xa[v] - xb[v]) for v in range(g.n)]
    dist, pred = _vertex_dijkstra(g, m.a, w)
    path, weight = _best_path_to(g, dist, pred, m.b)
    if path is None or len(path) < 3 or weight >= 1.0 - tol:
        return None
    cut = chain_inequality(m, path)
    return cut if cut.violation(x) > tol else None


def separate_paths(m: VspModel, x, limit: int = 50, tol: float = VIOLATION_TOL) -> list[LinearConstraint]:
    """Violated lifted chain inequalities of the fictitious model, most violated first."""
    g = m.graph
    xa, xb = _point(m, x)
    w = [max(0.0, 1.0 - xa[v] - xb[v]) for v in range(g.n)]
    found = []
    top_b = max(xb) if xb else 0.0
    for i in range(g.n):
        if xa[i] + top_b - 1.0 <= tol:
            continue
        dist, pred = _vertex_dijkstra(g, i, w)
        for j in range(g.n):
            if j == i or xa[i] + xb[j] - 1.0 <= tol or g.has_edge(i, j):
                continue
            path, weight = _best_path_to(g, dist, pred, j)
            if path is None or len(path) < 3:
                continue
            if xa[i] + xb[j] - 1.0 - weight <= tol:
                continue
            cut = path_inequality(m, path)
            viol = cut.violation(x)
            if viol > tol:
                found.append((-viol, i, j, cut))
    found.sort(key=lambda t: t[:3])
    return [t[3] for t in found[:limit]]


# ---------------------------------------------------------------- alpha pairs


def alpha_pair_inequalities(m: VspModel, table: AlphaTable, i: int, j: int
                            ) -> tuple[LinearConstraint, LinearConstraint]:
    """The two inequalities saying |C| >= alpha_ij when i, j sit on opposite shores.

    ``sum(x[k,a] + x[k,b]) - alpha*(2 - x[i,a] - x[j,b]) <= n - alpha`` and the
    same with ``i`` and ``j`` exchanged; the sum runs over the model's free
    vertices.
    """
    g = m.graph
    if i == j or g.has_edge(i, j):
        raise AdjacentPairError(f"vertices {i} and {j} are adjacent")
    if m.mode == "ab" and (i in (m.a, m.b) or j in (m.a, m.b)):
        raise ValueError("pair must avoid the fixed vertices a and b")
    alpha = table[(i, j)]
    n = g.n
    out = []
    for p, q in ((i, j), (j, i)):
        coeffs: dict[tuple[int, str], int] = {}
        for k in m.free:
            coeffs[(k, "a")] = 1
            coeffs[(k, "b")] = 1
        coeffs[(p, "a")] += alpha
        coeffs[(q, "b")] += alpha
        out.append(m.constraint(coeffs, LE, n + alpha, "alpha_pair"))
    return out[0], out[1]


def separate_alpha_pairs(m: VspModel, x, table: AlphaTable, limit: int = 50,
                         tol: float = VIOLATION_TOL) -> list[LinearConstraint]:
    """Most violated alpha-pair inequalities over all stored pairs.

    Sorted by decreasing violation, ties broken by pair then orientation.
    """
    xa, xb = _point(m, x)
    xa_arr = np.array(xa)
    xb_arr = np.array(xb)
    total = float(sum(xa_arr[k] + xb_arr[k] for k in m.free))
    n = m.graph.n
    fixed = (m.a, m.b) if m.mode == "ab" else ()
    pairs = [p for p in table.pairs() if p[0] not in fixed and p[1] not in fixed]
    if not pairs:
        return []
    P = np.array(pairs)
    al = np.array([table.alpha[p] for p in pairs], dtype=float)
    I, J = P[:, 0], P[:, 1]
    # violation = total - n + alpha * (x_pa + x_qb - 1)
    v1 = total - n + al * (xa_arr[I] + xb_arr[J] - 1.0)
    v2 = total - n + al * (xa_arr[J] + xb_arr[I] - 1.0)
    cand = []
    for k in np.flatnonzero(v1 > tol):
        cand.append((-v1[k], pairs[k], 0))
    for k in np.flatnonzero(v2 > tol):
        cand.append((-v2[k], pairs[k], 1))
    cand.sort()
    out = []
    for _, (i, j), which in cand[:limit]:
        out.append(alpha_pair_inequalities(m, table, i, j)[which])
    return out


# ---------------------------------------------------------------- subgraphs


def subgraph_inequality(m: VspModel, vertices: Iterable[int], alpha0: int) -> LinearConstraint:
    """``sum_{V'}(x[i,a] + x[i,b]) <= |V'| - min(alpha0, |V'| - beta)``."""
    vs = sorted(set(vertices))
    g = m.graph
    if len(vs) <= m.beta:
        raise ValueError(f"|V'|={len(vs)} must exceed beta={m.beta}")
    sub, _ = g.induced_subgraph(vs)
    if not sub.is_connected():
        raise GraphError("induced subgraph is disconnected")
    coeffs = {}
    for v in vs:
        coeffs[(v, "a")] = 1
        coeffs[(v, "b")] = 1
    rhs = len(vs) - min(alpha0, len(vs) - m.beta)
    return m.constraint(coeffs, LE, rhs, "subgraph")


def _bfs_order(g: Graph, s: int) -> list[int]:
    order = [s]
    seen = {s}
    k = 0
    while k < len(order):
        for w in sorted(g.adj[order[k]]):
            if w not in seen:
                seen.add(w)
                order.append(w)
        k += 1
    return order


def subgraph_candidates(g: Graph, beta: int, alpha_min: int | None = None,
                        cap: int | None = None) -> list[tuple[tuple[int, ...], int]]:
    """Vertex sets for subgraph inequalities with their (capped) alpha value.

    Candidates are V itself and, from every start vertex, the first ``beta + 1``
    vertices of a breadth-first search. The alpha value is returned already
    capped at ``|V'| - beta`` since only the minimum of the two matters.
    """
    cap = 2 * g.n if cap is None else cap
    out: list[tuple[tuple[int, ...], int]] = []
    seen = set()
    if g.n > beta and not g.is_complete():
        vs = tuple(range(g.n))
        a0 = alpha_min if alpha_min is not None else alpha_subgraph(g, vs)
        out.append((vs, min(a0, g.n - beta)))
        seen.add(vs)
    for s in range(g.n):
        if len(out) >= cap:
            break
        order = _bfs_order(g, s)
        if len(order) <= beta:
            continue
        vs = tuple(sorted(order[: beta + 1]))
        if vs in seen:
            continue
        seen.add(vs)
        sub, _ = g.induced_subgraph(vs)
        if sub.is_complete():
            continue
        out.append((vs, alpha_subgraph(g, vs, limit=len(vs) - beta)))
    return out


def separate_subgraphs(m: VspModel, x, candidates, limit: int = 50,
                       tol: float = VIOLATION_TOL) -> list[LinearConstraint]:
    xa, xb = _point(m, x)
    found = []
    for vs, a0 in candidates:
        lhs = sum(xa[v] + xb[v] for v in vs)
        rhs = len(vs) - min(a0, len(vs) - m.beta)
        if lhs - rhs > tol:
            found.append((-(lhs - rhs), vs, a0))
    found.sort()
    return [subgraph_inequality(m, vs, a0) for _, vs, a0 in found[:limit]]
