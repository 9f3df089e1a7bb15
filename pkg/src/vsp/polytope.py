"""Exhaustive checks of polyhedral facts on tiny graphs.

Everything here enumerates: separators with two fixed vertices, a-b chains,
cycles, and integral edge vectors. Guards keep the enumeration exhaustive
rather than sampled.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .connectivity import AlphaTable, alpha_subgraph, alpha_table
from .errors import AdjacentPairError, GuardError
from .graph import Graph, VertexPartition, default_beta
from .lp import GE, LE, LpProblem, solve_lp
from .model import (
    LinearConstraint,
    VspModel,
    alpha_pair_inequalities,
    build_ab_model,
    chain_inequality,
    path_inequality,
    subgraph_inequality,
)

__all__ = [
    "EdgeIncidence",
    "EdgeSystem",
    "EdgeSystemReport",
    "PointSet",
    "affine_dimension",
    "all_inequalities",
    "check_edge_system",
    "correspondence_report",
    "enumerate_ab_separators",
    "expected_dimension",
    "fractional_vertices",
    "simple_cycles",
    "simple_paths",
    "vertex_to_edge",
]

SEPARATOR_GUARD = 14
EDGE_GUARD = 10
TOL = 1e-9


# ---------------------------------------------------------------- vertex space


@dataclass(frozen=True)
class PointSet:
    """Incidence vectors of every ab-separator, in the ab model's column order."""

    graph: Graph
    a: int
    b: int
    beta: int
    columns: tuple[tuple[int, str], ...]
    points: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dimension(self) -> int:
        return len(self.columns)

    def partitions(self) -> list[VertexPartition]:
        k = len(self.columns) // 2
        free = [v for v, _ in self.columns[:k]]
        out = []
        for x in self.points:
            A = {self.a} | {free[t] for t in range(k) if x[t]}
            B = {self.b} | {free[t] for t in range(k) if x[k + t]}
            out.append(VertexPartition.from_sets(A, B, set(range(self.graph.n)) - A - B))
        return out


def enumerate_ab_separators(g: Graph, a: int, b: int, beta: int | None = None,
                            guard: int = SEPARATOR_GUARD) -> PointSet:
    """All partitions with ``a`` in A, ``b`` in B, no A-B edge and shores of size <= beta."""
    if g.n > guard:
        raise GuardError(f"separator enumeration guard: n={g.n} exceeds {guard}")
    if a == b or g.has_edge(a, b):
        raise AdjacentPairError(f"vertices {a} and {b} must be distinct and non-adjacent")
    beta = default_beta(g.n) if beta is None else beta
    free = [v for v in range(g.n) if v != a and v != b]
    k = len(free)
    side = {a: 1, b: 2}
    points = []

    def rec(t: int, na: int, nb: int) -> None:
        if t == k:
            x = [0] * (2 * k)
            for s, v in enumerate(free):
                if side[v] == 1:
                    x[s] = 1
                elif side[v] == 2:
                    x[k + s] = 1
            points.append(tuple(x))
            return
        v = free[t]
        nbr_sides = {side.get(u, 0) for u in g.adj[v]}
        side[v] = 0
        rec(t + 1, na, nb)
        if na < beta and 2 not in nbr_sides:
            side[v] = 1
            rec(t + 1, na + 1, nb)
        if nb < beta and 1 not in nbr_sides:
            side[v] = 2
            rec(t + 1, na, nb + 1)
        del side[v]

    if beta >= 1:
        rec(0, 1, 1)
    cols = tuple([(v, "a") for v in free] + [(v, "b") for v in free])
    return PointSet(g, a, b, beta, cols, tuple(sorted(points)))


def _integer_rank(rows: list[list[int]]) -> int:
    """Rank by fraction-free elimination over the integers."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank]
        for r in range(rank + 1, len(m)):
            f = m[r][c]
            if f:
                row = [p[c] * u - f * w for u, w in zip(m[r], p)]
                gcd = math.gcd(*row)
                m[r] = [u // gcd for u in row] if gcd > 1 else row
        rank += 1
        if rank == len(m):
            break
    return rank


def affine_dimension(points: PointSet | Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull of integer points, computed exactly."""
    pts = list(points.points if isinstance(points, PointSet) else points)
    if not pts:
        raise ValueError("affine dimension of an empty set")
    base = pts[0]
    diffs = [[int(u) - int(w) for u, w in zip(p, base)] for p in pts[1:]]
    return _integer_rank(diffs)


def expected_dimension(g: Graph, a: int, b: int) -> int:
    """Closed-form dimension of the ab-separator polytope: 2(n-2) - deg(a) - deg(b)."""
    return 2 * (g.n - 2) - g.degree(a) - g.degree(b)


# ---------------------------------------------------------------- inequality families


def simple_paths(g: Graph, s: int, t: int) -> list[list[int]]:
    """Every simple s-t path (vertex sequence), in lexicographic DFS order."""
    out = []
    path = [s]
    on = {s}

    def rec(u: int) -> None:
        for v in sorted(g.adj[u]):
            if v == t:
                out.append(path + [t])
            elif v not in on:
                on.add(v)
                path.append(v)
                rec(v)
                path.pop()
                on.remove(v)

    rec(s)
    return out


def simple_cycles(g: Graph) -> list[list[int]]:
    """Every simple cycle once, as a vertex list starting at its smallest vertex."""
    out = []
    for s in range(g.n):
        path = [s]
        on = {s}

        def rec(u: int) -> None:
            for v in sorted(g.adj[u]):
                if v == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(list(path))
                elif v > s and v not in on:
                    on.add(v)
                    path.append(v)
                    rec(v)
                    path.pop()
                    on.remove(v)

        rec(s)
    return out


def _connected_subsets(g: Graph, min_size: int) -> Iterable[tuple[int, ...]]:
    for size in range(min_size, g.n + 1):
        for vs in itertools.combinations(range(g.n), size):
            sub, _ = g.induced_subgraph(vs)
            if sub.is_connected() and not sub.is_complete():
                yield vs


def all_inequalities(m: VspModel, table: AlphaTable | None = None) -> list[LinearConstraint]:
    """Every inequality the cut families can produce for ``m`` on a tiny graph.

    Chains (all a-b paths, or all paths between non-adjacent pairs for the
    fictitious model), alpha pairs (all pairs the model admits) and subgraph
    inequalities (all connected non-clique vertex sets larger than beta, with
    their exact alpha). Base rows are included too.
    """
    g = m.graph
    out = list(m.constraints)
    if g.n < 3 or g.is_complete():
        return out
    table = alpha_table(g) if table is None else table
    if m.mode == "ab":
        for p in simple_paths(g, m.a, m.b):
            if len(p) >= 3:
                out.append(chain_inequality(m, p))
    else:
        for i, j in itertools.permutations(range(g.n), 2):
            if g.has_edge(i, j):
                continue
            for p in simple_paths(g, i, j):
                out.append(path_inequality(m, p))
    fixed = (m.a, m.b) if m.mode == "ab" else ()
    for i, j in table.pairs():
        if i in fixed or j in fixed:
            continue
        out.extend(alpha_pair_inequalities(m, table, i, j))
    for vs in _connected_subsets(g, m.beta + 1):
        out.append(subgraph_inequality(m, vs, alpha_subgraph(g, vs)))
    return out


# ---------------------------------------------------------------- edge space


@dataclass(frozen=True)
class EdgeIncidence:
    """A value per edge plus, for cut edges, which shore the non-separator end lies in.

    ``labels[e]`` is ``"F1"`` for A-C edges, ``"F2"`` for B-C edges and ``None``
    for edges not in the cut (or when the vector did not come from a partition).
    """

    graph: Graph
    values: Mapping[tuple[int, int], Fraction]
    labels: Mapping[tuple[int, int], str | None] = field(default_factory=dict)

    def __post_init__(self):
        if set(self.values) != set(self.graph.edge_list()):
            raise ValueError("edge vector must be defined on every edge exactly once")

    @classmethod
    def from_values(cls, g: Graph, values) -> EdgeIncidence:
        """From a mapping edge -> value or a sequence aligned with ``g.edge_list()``."""
        if isinstance(values, Mapping):
            vals = {(min(e), max(e)): Fraction(v) for e, v in values.items()}
        else:
            vals = {e: Fraction(v) for e, v in zip(g.edge_list(), values, strict=True)}
        return cls(g, vals)

    def __getitem__(self, e: tuple[int, int]) -> Fraction:
        return self.values[(min(e), max(e))]

    def vector(self) -> tuple[Fraction, ...]:
        return tuple(self.values[e] for e in self.graph.edge_list())

    def support(self) -> frozenset[tuple[int, int]]:
        return frozenset(e for e, v in self.values.items() if v != 0)


def vertex_to_edge(g: Graph, p: VertexPartition) -> EdgeIncidence:
    """Edge vector of a separator: 1 on edges with exactly one end in C."""
    covered = sorted([*p.A, *p.B, *p.C])
    if covered != list(range(g.n)):
        raise ValueError("not a partition of the vertex set")
    A, B, C = set(p.A), set(p.B), set(p.C)
    for i, j in g.edge_list():
        if (i in A and j in B) or (i in B and j in A):
            raise ValueError(f"edge ({i}, {j}) joins the two shores")
    values = {}
    labels = {}
    for e in g.edge_list():
        i, j = e
        if (i in C) != (j in C):
            other = j if i in C else i
            values[e] = Fraction(1)
            labels[e] = "F1" if other in A else "F2"
        else:
            values[e] = Fraction(0)
            labels[e] = None
    return EdgeIncidence(g, values, labels)


def _worst_odd_subset(vals: Sequence[float]) -> tuple[float, tuple[int, ...]]:
    """Max over odd-size index sets S of chi(S) - chi(rest) - |S| + 1.

    Each position contributes ``chi - 1`` inside S and ``-chi`` outside, so
    the best S takes positions with chi > 1/2 and, if that count is even,
    toggles the position closest to 1/2.
    """
    k = len(vals)
    if k == 0:
        return -math.inf, ()
    inside = [v > 0.5 for v in vals]
    if sum(inside) % 2 == 0:
        t = min(range(k), key=lambda s: (abs(2 * vals[s] - 1), s))
        inside[t] = not inside[t]
    S = tuple(s for s in range(k) if inside[s])
    value = 1.0 + sum((vals[s] - 1.0) if inside[s] else -vals[s] for s in range(k))
    return value, S


class EdgeSystem:
    """The edge-space system of a graph and a pair (a, b), with all chains and cycles.

    * ``chain``: every a-b chain carries at least 2 units,
    * ``chain_parity``: for every a-b chain and odd subset S of its edges,
      ``chi(S) - chi(rest) <= |S| - 1``,
    * ``cycle_parity``: the same for every cycle.
    """

    FAMILIES = ("chain", "chain_parity", "cycle_parity")

    def __init__(self, g: Graph, a: int, b: int, guard: int = EDGE_GUARD):
        if g.n > guard:
            raise GuardError(f"chain/cycle enumeration guard: n={g.n} exceeds {guard}")
        if a == b or g.has_edge(a, b):
            raise AdjacentPairError(f"vertices {a} and {b} must be distinct and non-adjacent")
        self.graph = g
        self.a, self.b = a, b
        self.edge_index = {e: k for k, e in enumerate(g.edge_list())}

        def edges_of(vs, closed):
            seq = list(zip(vs, vs[1:]))
            if closed:
                seq.append((vs[-1], vs[0]))
            return tuple(self.edge_index[(min(u, v), max(u, v))] for u, v in seq)

        self.chains = [edges_of(p, False) for p in simple_paths(g, a, b)]
        self.cycles = [edges_of(c, True) for c in simple_cycles(g)]
        self._chain_mat = self._incidence(self.chains)
        self._cycle_mat = self._incidence(self.cycles)

    def _incidence(self, groups) -> np.ndarray:
        M = np.zeros((len(groups), self.graph.num_edges), dtype=bool)
        for r, es in enumerate(groups):
            M[r, list(es)] = True
        return M

    @staticmethod
    def _parity_values(M: np.ndarray, x: np.ndarray) -> np.ndarray:
        # vectorized form of _worst_odd_subset over every row of M
        if M.shape[0] == 0:
            return np.zeros(0)
        best = (M * np.maximum(x - 1.0, -x)).sum(axis=1)
        even = (M & (x > 0.5)).sum(axis=1) % 2 == 0
        penalty = np.where(M, np.abs(2 * x - 1.0), np.inf).min(axis=1)
        return 1.0 + best - np.where(even, penalty, 0.0)

    def satisfied(self, X: np.ndarray, tol: float = TOL, chunk: int = 256) -> np.ndarray:
        """Boolean per row of ``X``: does that edge vector satisfy every inequality?"""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.ones(X.shape[0], dtype=bool)
        for lo in range(0, X.shape[0], chunk):
            x = X[lo:lo + chunk, None, :]
            ok = np.ones(x.shape[0], dtype=bool)
            if self.chains:
                ok &= np.all(x[:, 0, :] @ self._chain_mat.T >= 2 - tol, axis=1)
            for M in (self._chain_mat, self._cycle_mat):
                if M.shape[0] == 0:
                    continue
                best = (M * np.maximum(x - 1.0, -x)).sum(axis=2)
                even = (M & (x > 0.5)).sum(axis=2) % 2 == 0
                penalty = np.where(M, np.abs(2 * x - 1.0), np.inf).min(axis=2)
                ok &= np.all(1.0 + best - np.where(even, penalty, 0.0) <= tol, axis=1)
            out[lo:lo + chunk] = ok
        return out

    def check(self, chi: EdgeIncidence | Sequence, tol: float = TOL) -> EdgeSystemReport:
        vec = chi.vector() if isinstance(chi, EdgeIncidence) else tuple(chi)
        x = np.array([float(v) for v in vec])
        viol: dict[str, list] = {f: [] for f in self.FAMILIES}
        if self.chains:
            sums = self._chain_mat @ x
            for k in np.flatnonzero(sums < 2 - tol):
                viol["chain"].append((int(k), (), float(2 - sums[k])))
        for fam, groups, M in (("chain_parity", self.chains, self._chain_mat),
                               ("cycle_parity", self.cycles, self._cycle_mat)):
            for k in np.flatnonzero(self._parity_values(M, x) > tol):
                es = groups[k]
                worst, S = _worst_odd_subset([x[e] for e in es])
                viol[fam].append((int(k), tuple(es[s] for s in S), worst))
        return EdgeSystemReport(len(self.chains), len(self.cycles), viol)

    def rows(self) -> tuple[np.ndarray, list[str], np.ndarray]:
        """Explicit rows of the system (exponential; for tiny graphs only)."""
        e = self.graph.num_edges
        A, sense, rhs = [], [], []
        for ch in self.chains:
            r = np.zeros(e)
            r[list(ch)] = 1
            A.append(r), sense.append(GE), rhs.append(2.0)
        for group in (self.chains, self.cycles):
            for ch in group:
                for size in range(1, len(ch) + 1, 2):
                    for S in itertools.combinations(ch, size):
                        r = np.zeros(e)
                        r[list(ch)] = -1
                        r[list(S)] = 1
                        A.append(r), sense.append(LE), rhs.append(size - 1.0)
        return np.array(A).reshape(-1, e), sense, np.array(rhs)


@dataclass
class EdgeSystemReport:
    num_chains: int
    num_cycles: int
    violations: dict[str, list]

    def holds(self, family: str) -> bool:
        return not self.violations[family]

    @property
    def ok(self) -> bool:
        return all(not v for v in self.violations.values())

    def summary(self) -> dict[str, bool]:
        return {f: self.holds(f) for f in self.violations}


def check_edge_system(g: Graph, a: int, b: int, chi, guard: int = EDGE_GUARD) -> EdgeSystemReport:
    """Evaluate every chain and parity inequality of the edge system at ``chi``."""
    return EdgeSystem(g, a, b, guard).check(chi)


def _cut_vector(g: Graph, S: set[int]) -> tuple[int, ...]:
    return tuple(int((i in S) != (j in S)) for i, j in g.edge_list())


def _integral_solutions(system: EdgeSystem, exhaustive: bool) -> set[tuple[int, ...]]:
    """Integral edge vectors satisfying the whole system.

    With ``exhaustive`` all of {0,1}^E is scanned. Otherwise only cut vectors
    delta(S) with a, b outside S are scanned; for 0/1 vectors the parity rows
    force every cycle and every a-b chain to carry an even count, which is
    exactly that set, so both scans agree (the tests confirm this).
    """
    g = system.graph
    if exhaustive:
        cand = list(itertools.product((0, 1), repeat=g.num_edges))
    else:
        free = [v for v in range(g.n) if v not in (system.a, system.b)]
        cand = [
            _cut_vector(g, set(S))
            for r in range(len(free) + 1)
            for S in itertools.combinations(free, r)
        ]
    ok = system.satisfied(np.array(cand, dtype=float).reshape(len(cand), g.num_edges))
    return {c for c, good in zip(cand, ok) if good}


@dataclass
class CorrespondenceReport:
    """How integral edge-system solutions relate to images of ab-separators."""

    images: set[tuple[int, ...]]
    solutions: set[tuple[int, ...]]
    images_failing: set[tuple[int, ...]]
    beta_only: set[tuple[int, ...]]
    unexplained: set[tuple[int, ...]]

    @property
    def ok(self) -> bool:
        return not self.images_failing and not self.unexplained

    def as_dict(self) -> dict[str, int]:
        return {
            "images": len(self.images),
            "solutions": len(self.solutions),
            "images_failing": len(self.images_failing),
            "beta_only": len(self.beta_only),
            "unexplained": len(self.unexplained),
        }


def correspondence_report(g: Graph, a: int, b: int, beta: int | None = None,
                          exhaustive: bool | None = None) -> CorrespondenceReport:
    """Compare integral solutions of the edge system with separator images.

    Solutions that are not images are split into those that would be images
    without the shore-size bound (the edge system has no such bound) and the
    rest, which are reported as unexplained.
    """
    beta = default_beta(g.n) if beta is None else beta
    system = EdgeSystem(g, a, b)
    if exhaustive is None:
        exhaustive = g.num_edges <= 10
    images = {
        tuple(int(v) for v in vertex_to_edge(g, p).vector())
        for p in enumerate_ab_separators(g, a, b, beta).partitions()
    }
    unbounded = {
        tuple(int(v) for v in vertex_to_edge(g, p).vector())
        for p in enumerate_ab_separators(g, a, b, g.n).partitions()
    }
    sols = _integral_solutions(system, exhaustive)
    failing = {c for c in images if not system.check(c).ok}
    extra = sols - images
    beta_only = extra & unbounded
    return CorrespondenceReport(images, sols, failing, beta_only, extra - beta_only)


def fractional_vertices(g: Graph, a: int, b: int, trials: int = 20, seed: int = 0,
                        max_rows: int = 5000) -> list[tuple[Fraction, ...]]:
    """Fractional optimal basic solutions of the relaxed edge system (0 <= chi <= 1).

    Random objectives are optimized with the simplex; basic optima with a
    non-integral entry are returned, rounded to small-denominator fractions.
    """
    system = EdgeSystem(g, a, b)
    A, sense, rhs = system.rows()
    if A.shape[0] > max_rows:
        raise GuardError(f"edge system has {A.shape[0]} rows, above {max_rows}")
    rng = random.Random(seed)
    e = g.num_edges
    found = []
    for _ in range(trials):
        c = np.array([rng.uniform(-1, 1) for _ in range(e)])
        sol = solve_lp(LpProblem(c, A, sense, rhs, np.zeros(e), np.ones(e)))
        if not sol.optimal:
            continue
        if np.any(np.abs(sol.x - np.round(sol.x)) > 1e-7):
            pt = tuple(Fraction(float(v)).limit_denominator(64) for v in sol.x)
            if pt not in found:
                found.append(pt)
    return found
