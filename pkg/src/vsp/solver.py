"""Branch-and-cut driver and the enumeration oracle used to check it."""

from __future__ import annotations

import hashlib
import heapq
import itertools
import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .connectivity import AlphaTable, alpha_table, min_vertex_cut
from .errors import CompleteGraphError, GuardError
from .graph import Graph, VertexPartition, default_beta, validate_partition
from .lp import Basis, solve_lp
from .model import (
    VspModel,
    build_ab_model,
    build_full_model,
    separate_alpha_pairs,
    separate_chain,
    separate_paths,
    separate_subgraphs,
    subgraph_candidates,
)

log = logging.getLogger(__name__)

CUT_FAMILIES = ("alpha_pair", "chain", "subgraph")
INT_TOL = 1e-6
ORACLE_GUARD = 22

__all__ = [
    "CUT_FAMILIES",
    "SolveResult",
    "SolverConfig",
    "branch",
    "brute_force",
    "decode",
    "enumerate_partitions",
    "primal_heuristic",
    "solve",
]


@dataclass(frozen=True)
class SolverConfig:
    time_limit: float = 1800.0
    cuts: tuple[str, ...] = CUT_FAMILIES
    max_rounds: int = 10
    max_cuts: int = 50
    branching: str = "most_fractional"
    seed: int = 0
    strategy: str = "fictitious"  # or "pairs"
    check_invariants: bool = True

    def __post_init__(self):
        if not self.time_limit > 0:
            raise ValueError("time limit must be positive")
        object.__setattr__(self, "cuts", tuple(self.cuts))
        unknown = set(self.cuts) - set(CUT_FAMILIES)
        if unknown:
            raise ValueError(f"unknown cut families {sorted(unknown)}")
        if self.branching != "most_fractional":
            raise ValueError(f"unknown branching rule {self.branching!r}")
        if self.strategy not in ("fictitious", "pairs"):
            raise ValueError(f"unknown strategy {self.strategy!r}")

    def config_hash(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:12]


@dataclass
class SolveResult:
    status: str  # optimal | time_limit | infeasible
    partition: VertexPartition | None
    objective: float | None
    bound: float | None
    nodes: int = 0
    cuts: dict[str, int] = field(default_factory=dict)
    time: float = 0.0
    alpha_min: int | None = None
    root_bound: float | None = None
    lp_iterations: int = 0
    cut_log: list = field(default_factory=list, repr=False)

    @property
    def separator_size(self) -> int | None:
        return None if self.partition is None else len(self.partition.C)


# ---------------------------------------------------------------- oracle


def _split_components(sizes: Sequence[int], beta: int) -> tuple[int, ...] | None:
    """Indices of a group of components for shore A, or None.

    Both groups must be nonempty and hold at most ``beta`` vertices.
    """
    total = sum(sizes)
    k = len(sizes)
    if k < 2:
        return None
    lo, hi = max(1, total - beta), min(beta, total - 1)
    if lo > hi:
        return None
    # reach[s] = index of the component that first reached sum s
    reach: dict[int, tuple[int, int]] = {0: (-1, -1)}
    for idx, sz in enumerate(sizes):
        for s in sorted(reach, reverse=True):
            t = s + sz
            if t not in reach:
                reach[t] = (idx, s)
    for target in range(lo, hi + 1):
        if target in reach:
            group = []
            s = target
            while s:
                idx, prev = reach[s]
                group.append(idx)
                s = prev
            if 0 < len(group) < k:
                return tuple(sorted(group))
    return None


def _try_separator(g: Graph, C: Sequence[int], beta: int) -> VertexPartition | None:
    comps = g.components(C)
    pick = _split_components([len(c) for c in comps], beta)
    if pick is None:
        return None
    A = set()
    for idx in pick:
        A.update(comps[idx])
    B = set(range(g.n)) - A - set(C)
    return VertexPartition.from_sets(A, B, C)


def _subsets_by_cost(costs: Sequence):
    """All index subsets in nondecreasing total cost."""
    order = sorted(range(len(costs)), key=lambda v: (costs[v], v))
    w = [costs[v] for v in order]
    yield ()
    if not w:
        return
    counter = itertools.count()
    heap = [(w[0], next(counter), (0,))]
    while heap:
        c, _, sub = heapq.heappop(heap)
        yield tuple(sorted(order[k] for k in sub))
        last = sub[-1]
        if last + 1 < len(w):
            heapq.heappush(heap, (c + w[last + 1], next(counter), sub + (last + 1,)))
            heapq.heappush(heap, (c - w[last] + w[last + 1], next(counter), sub[:-1] + (last + 1,)))


def brute_force(g: Graph, beta: int | None = None, guard: int = ORACLE_GUARD) -> SolveResult:
    """Exact answer by enumerating separators in increasing cost.

    For each candidate C the components of G - C are packed into two
    nonempty groups of at most ``beta`` vertices by a subset-sum table; the
    first C that admits such a packing is optimal.
    """
    if g.n > guard:
        raise GuardError(f"oracle guard: n={g.n} exceeds {guard}")
    t0 = time.perf_counter()
    beta = default_beta(g.n) if beta is None else beta
    if g.unit_costs:
        candidates = (
            C for size in range(g.n + 1) for C in itertools.combinations(range(g.n), size)
        )
    else:
        candidates = _subsets_by_cost(g.cost)
    for C in candidates:
        p = _try_separator(g, C, beta)
        if p is not None:
            obj = p.objective(g)
            return SolveResult("optimal", p, obj, obj, time=time.perf_counter() - t0)
    return SolveResult("infeasible", None, None, None, time=time.perf_counter() - t0)


def enumerate_partitions(g: Graph, beta: int, guard: int = 12):
    """Every feasible (A, B, C) with A, B nonempty, no A-B edge, shores <= beta."""
    if g.n > guard:
        raise GuardError(f"enumeration guard: n={g.n} exceeds {guard}")
    n = g.n
    side = [0] * n  # 0 = C, 1 = A, 2 = B

    def rec(v, na, nb):
        if v == n:
            if na and nb:
                yield VertexPartition.from_sets(
                    (u for u in range(n) if side[u] == 1),
                    (u for u in range(n) if side[u] == 2),
                    (u for u in range(n) if side[u] == 0),
                )
            return
        side[v] = 0
        yield from rec(v + 1, na, nb)
        nbrs = [side[u] for u in g.adj[v] if u < v]
        if na < beta and 2 not in nbrs:
            side[v] = 1
            yield from rec(v + 1, na + 1, nb)
        if nb < beta and 1 not in nbrs:
            side[v] = 2
            yield from rec(v + 1, na, nb + 1)
        side[v] = 0

    yield from rec(0, 0, 0)


# ---------------------------------------------------------------- node helpers


def decode(model: VspModel, x) -> VertexPartition:
    """Partition encoded by an integral model point; the result is validated."""
    p = model.decode(x)
    xi = np.round(np.asarray(x, dtype=float)).astype(int)
    if np.any(xi < np.asarray(model.lower)) or np.any(xi > np.asarray(model.upper)):
        raise ValueError("point violates a column bound")
    verdict = validate_partition(model.graph, p, model.beta)
    if not verdict:
        raise ValueError(f"decoded partition is infeasible: {verdict.reason}")
    return p


def primal_heuristic(model: VspModel, x) -> VertexPartition | None:
    """Greedy rounding of an LP point.

    Vertices with positive support are taken by decreasing ``max(x_a, x_b)``
    and put on their heavier side when that creates no A-B edge and keeps the
    shore within beta; everything else goes to C.
    """
    g = model.graph
    beta = model.beta
    vals = {}
    for (v, side), j in model.columns.items():
        vals.setdefault(v, [0.0, 0.0])[0 if side == "a" else 1] = float(x[j])
    if model.mode == "ab":
        vals[model.a] = [1.0, 0.0]
        vals[model.b] = [0.0, 1.0]
    order = sorted((v for v in vals if max(vals[v]) > INT_TOL), key=lambda v: (-max(vals[v]), v))
    A: set[int] = set()
    B: set[int] = set()
    for v in order:
        xa, xb = vals[v]
        prefs = ("a", "b") if xa >= xb else ("b", "a")
        side = prefs[0]
        mine, other = (A, B) if side == "a" else (B, A)
        if len(mine) < beta and not (g.adj[v] & other):
            mine.add(v)
    if not A or not B:
        return None
    if model.mode == "fictitious" and len(A) > len(B):
        A, B = B, A
    p = VertexPartition.from_sets(A, B, set(range(g.n)) - A - B)
    return p if validate_partition(g, p, beta) else None


def cut_heuristic(g: Graph, beta: int, table: AlphaTable, tries: int = 10) -> VertexPartition | None:
    """Best partition built from minimum vertex cuts of the lowest-alpha pairs."""
    best = None
    pairs = sorted(table.alpha, key=lambda p: (table.alpha[p], p))[:tries]
    for i, j in pairs:
        C = sorted(min_vertex_cut(g, i, j))
        p = _try_separator(g, C, beta)
        if p is not None and (best is None or p.objective(g) > best.objective(g)):
            best = p
    return best


def branch(x, lower=None, upper=None) -> int:
    """Column whose value is closest to 0.5 (ties: lowest column index).

    Columns are laid out a-side block first, then b-side block, each by
    vertex id, so ties favor the a side and then the lowest vertex.
    """
    x = np.asarray(x, dtype=float)
    frac = np.abs(x - np.round(x))
    if lower is not None:
        frac = np.where(np.asarray(lower) == np.asarray(upper), 0.0, frac)
    if frac.max() <= INT_TOL:
        raise ValueError("branch called on an integral point")
    dist = np.abs(x - 0.5)
    dist = np.where(frac > INT_TOL, dist, np.inf)
    return int(np.argmin(dist))


def _is_integral(x) -> bool:
    return bool(np.all(np.abs(x - np.round(x)) <= INT_TOL))


# ---------------------------------------------------------------- branch and cut


@dataclass(order=True)
class _Node:
    key: float
    seq: int
    lower: tuple = field(compare=False)
    upper: tuple = field(compare=False)
    bound: float = field(compare=False)
    basis: Basis | None = field(compare=False, default=None)
    depth: int = field(compare=False, default=0)


class _BranchAndCut:
    def __init__(self, model: VspModel, cfg: SolverConfig, table: AlphaTable | None,
                 deadline: float, offset: float = 0.0, incumbent=None, incumbent_value=-math.inf):
        self.model = model
        self.cfg = cfg
        self.table = table
        self.deadline = deadline
        self.offset = offset  # constant added to model objective (fixed a, b)
        self.incumbent = incumbent
        self.incumbent_value = incumbent_value
        self.integral_obj = all(float(c).is_integer() for c in model.objective) and float(offset).is_integer()
        self.nodes = 0
        self.lp_iterations = 0
        self.root_bound = None
        # valid before any LP is solved: every vertex with a column lands on a shore
        g = model.graph
        self.trivial_bound = float(sum(g.cost[v] for v in {v for v, _ in model.columns}))
        if model.mode == "fictitious" and g.unit_costs:
            self.trivial_bound = min(self.trivial_bound, float(g.n - model.alpha_min))
        self.candidates = []
        if "subgraph" in cfg.cuts:
            self.candidates = subgraph_candidates(model.graph, model.beta, model.alpha_min)

    def _can_prune(self, bound: float) -> bool:
        if self.incumbent is None:
            return False
        b = bound + self.offset
        if self.integral_obj:
            return math.floor(b + INT_TOL) <= self.incumbent_value
        return b <= self.incumbent_value + INT_TOL

    def _offer(self, p: VertexPartition | None) -> None:
        if p is None:
            return
        g = self.model.graph
        if self.cfg.check_invariants:
            assert validate_partition(g, p, self.model.beta), "incumbent failed validation"
        val = p.objective(g)
        if self.incumbent is None or val > self.incumbent_value + INT_TOL:
            self.incumbent = p
            self.incumbent_value = val

    def _solve(self, lower, upper, basis):
        lp = self.model.to_lp(lower=lower, upper=upper)
        sol = solve_lp(lp, warm=basis)
        if sol.status == "error" and basis is not None:
            sol = solve_lp(lp)
        if sol.status == "error":
            raise ArithmeticError(f"LP failure: {sol.message}")
        self.lp_iterations += sol.iterations
        return sol

    def _separate(self, x):
        m, cfg = self.model, self.cfg
        budget = cfg.max_cuts
        out = []
        if "alpha_pair" in cfg.cuts and self.table is not None:
            out += separate_alpha_pairs(m, x, self.table, limit=budget)
        if "chain" in cfg.cuts and len(out) < budget:
            if m.mode == "ab":
                c = separate_chain(m, x)
                if c is not None:
                    out.append(c)
            else:
                out += separate_paths(m, x, limit=budget - len(out))
        if "subgraph" in cfg.cuts and len(out) < budget:
            out += separate_subgraphs(m, x, self.candidates, limit=budget - len(out))
        return out[:budget]

    def _global_bound(self, queue, current: float | None = None) -> float:
        vals = [nd.bound + self.offset for nd in queue]
        if current is not None:
            vals.append(current + self.offset)
        if self.incumbent is not None:
            vals.append(self.incumbent_value)
        return max(vals) if vals else -math.inf

    def run(self):
        """Returns (finished, global bound)."""
        m = self.model
        seq = itertools.count()
        root = _Node(0.0, next(seq), tuple(m.lower), tuple(m.upper), self.trivial_bound)
        queue = [root]
        timed_out = False
        while queue:
            node = heapq.heappop(queue)
            if self._can_prune(node.bound):
                continue
            if time.perf_counter() > self.deadline:
                heapq.heappush(queue, node)
                timed_out = True
                break
            self.nodes += 1
            sol = self._solve(node.lower, node.upper, node.basis)
            if sol.status == "infeasible":
                continue
            rounds = 0
            while True:
                if self._can_prune(sol.value) or _is_integral(sol.x):
                    break
                if rounds >= self.cfg.max_rounds or time.perf_counter() > self.deadline:
                    break
                added = m.cuts.add(self._separate(sol.x))
                if not added:
                    break
                rounds += 1
                sol = self._solve(node.lower, node.upper, sol.basis)
                if sol.status == "infeasible":
                    break
            if sol.status == "infeasible":
                continue
            bound = min(sol.value, node.bound)
            if node.depth == 0:
                self.root_bound = sol.value + self.offset
                if self.cfg.check_invariants and m.mode == "fictitious" and m.graph.unit_costs:
                    limit = m.graph.n - m.alpha_min
                    assert self.root_bound <= limit + 1e-6, "root bound above n - alpha_min"
            if _is_integral(sol.x):
                self._offer(decode(m, sol.x))
                continue
            if m.mode == "fictitious":
                self._offer(primal_heuristic(m, sol.x))
            if self.cfg.check_invariants and self.incumbent is not None:
                gb = self._global_bound(queue, bound)
                assert gb >= self.incumbent_value - 1e-6, "global bound below incumbent"
            if self._can_prune(bound):
                continue
            j = branch(sol.x, node.lower, node.upper)
            for val in (1, 0):
                lo, hi = list(node.lower), list(node.upper)
                lo[j] = hi[j] = val
                heapq.heappush(queue, _Node(-bound, next(seq), tuple(lo), tuple(hi),
                                            bound, sol.basis, node.depth + 1))
        if self.nodes == 0 and not timed_out:
            # root pruned by the incumbent before any LP: the trivial bound was its bound
            self.root_bound = self.trivial_bound + self.offset
        return (not timed_out), self._global_bound(queue)


def solve(g: Graph, beta: int | None = None, cfg: SolverConfig | None = None,
          table: AlphaTable | None = None) -> SolveResult:
    """Minimum-cost vertex separator of ``g`` with shores of size at most ``beta``."""
    cfg = cfg or SolverConfig()
    t0 = time.perf_counter()
    g.require_connected()
    beta = default_beta(g.n) if beta is None else beta
    if beta < 1:
        raise ValueError("beta must be at least 1")
    if g.n < 3 or g.is_complete():
        return SolveResult("infeasible", None, None, None, time=time.perf_counter() - t0)
    if table is None:
        table = alpha_table(g)
    deadline = t0 + cfg.time_limit
    if cfg.strategy == "pairs":
        return _solve_pairs(g, beta, cfg, table, t0, deadline)

    model = build_full_model(g, beta, table.alpha_min)
    bc = _BranchAndCut(model, cfg, table, deadline)
    bc._offer(cut_heuristic(g, beta, table))
    finished, bound = bc.run()
    return _result(bc, finished, bound, table, t0, model)


def _result(bc, finished, bound, table, t0, model=None, nodes=None, cuts=None, lp_it=None, root=None):
    if finished:
        status = "optimal" if bc.incumbent is not None else "infeasible"
        bound = bc.incumbent_value if bc.incumbent is not None else None
    else:
        status = "time_limit"
    res = SolveResult(
        status,
        bc.incumbent,
        bc.incumbent_value if bc.incumbent is not None else None,
        bound,
        nodes=bc.nodes if nodes is None else nodes,
        cuts=(model.cuts.counts() if cuts is None else cuts),
        time=time.perf_counter() - t0,
        alpha_min=table.alpha_min,
        root_bound=bc.root_bound if root is None else root,
        lp_iterations=bc.lp_iterations if lp_it is None else lp_it,
        cut_log=(list(model.cuts) if model is not None else []),
    )
    return res


def _solve_pairs(g, beta, cfg, table, t0, deadline) -> SolveResult:
    """One ab-fixed branch-and-cut per non-adjacent pair, sharing the incumbent."""
    best, best_val = None, -math.inf
    nodes = lp_it = 0
    cuts: dict[str, int] = {}
    cut_log = []
    finished = True
    open_bound = -math.inf
    root = -math.inf
    for a, b in table.pairs():
        if time.perf_counter() > deadline:
            finished = False
            open_bound = max(open_bound, g.n * max(g.cost))
            break
        model = build_ab_model(g, a, b, beta)
        offset = float(g.cost[a] + g.cost[b])
        bc = _BranchAndCut(model, cfg, table, deadline, offset, best, best_val)
        done, bound = bc.run()
        nodes += bc.nodes
        lp_it += bc.lp_iterations
        if bc.root_bound is not None:
            root = max(root, bc.root_bound)
        for k, v in model.cuts.counts().items():
            cuts[k] = cuts.get(k, 0) + v
        cut_log.append(((a, b), list(model.cuts)))
        best, best_val = bc.incumbent, bc.incumbent_value
        if not done:
            finished = False
            open_bound = max(open_bound, bound)
            break
    status = "optimal" if finished and best is not None else ("infeasible" if finished else "time_limit")
    bound = best_val if status == "optimal" else (None if status == "infeasible" else max(open_bound, best_val))
    res = SolveResult(status, best, best_val if best is not None else None, bound, nodes, cuts,
                      time.perf_counter() - t0, table.alpha_min,
                      root if root > -math.inf else None, lp_it)
    res.cut_log = cut_log
    return res
