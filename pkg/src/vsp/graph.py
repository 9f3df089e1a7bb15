"""Graph representation, instance ingestion and partition checks."""

from __future__ import annotations

import io
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DisconnectedGraphError, GraphError, ParseError

__all__ = [
    "Graph",
    "InstanceMeta",
    "SparsePattern",
    "Verdict",
    "VertexPartition",
    "default_beta",
    "intersection_graph",
    "meta",
    "parse_costs",
    "parse_dimacs_col",
    "parse_matrix_market",
    "read_graph",
    "validate_partition",
    "write_dimacs_col",
    "write_matrix_market",
]


def _as_text(data) -> str:
    if isinstance(data, (bytes, bytearray)):
        return data.decode("utf-8", errors="replace")
    if isinstance(data, str):
        return data
    return _as_text(data.read())


class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with vertex costs.

    Edges are stored as sorted pairs ``(i, j)`` with ``i < j``. Instances are
    treated as immutable once built.
    """

    __slots__ = ("n", "edges", "cost", "adj", "_edge_list")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        cost: Sequence | None = None,
        *,
        strict: bool = True,
    ) -> None:
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        canon = set()
        for i, j in edges:
            i, j = int(i), int(j)
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                raise GraphError(f"self-loop on vertex {i}")
            e = (i, j) if i < j else (j, i)
            if strict and e in canon:
                raise GraphError(f"duplicate edge {e}")
            canon.add(e)
        if cost is None:
            cost = (1,) * n
        else:
            cost = tuple(cost)
            if len(cost) != n:
                raise GraphError(f"expected {n} costs, got {len(cost)}")
            if any(c < 0 for c in cost):
                raise GraphError("vertex costs must be nonnegative")
        adj = [set() for _ in range(n)]
        for i, j in canon:
            adj[i].add(j)
            adj[j].add(i)
        self.n = n
        self.edges = frozenset(canon)
        self.cost = cost
        self.adj = tuple(frozenset(s) for s in adj)
        self._edge_list = tuple(sorted(canon))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.num_edges})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.edges, self.cost) == (other.n, other.edges, other.cost)

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_list(self) -> tuple[tuple[int, int], ...]:
        """Edges in lexicographic order."""
        return self._edge_list

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adj[i]

    def degree(self, i: int) -> int:
        return len(self.adj[i])

    @property
    def unit_costs(self) -> bool:
        return all(c == 1 for c in self.cost)

    def is_complete(self) -> bool:
        return 2 * self.num_edges == self.n * (self.n - 1)

    def non_adjacent_pairs(self) -> list[tuple[int, int]]:
        """All pairs ``i < j`` with no edge between them, lexicographic."""
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if j not in self.adj[i]
        ]

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """Connected components of the graph with ``removed`` deleted."""
        seen = [False] * self.n
        for v in removed:
            seen[v] = True
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        return len(self.components()) == 1

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Return the induced subgraph and the list mapping new ids to old ids."""
        verts = sorted(set(vertices))
        index = {v: k for k, v in enumerate(verts)}
        edges = [
            (index[i], index[j])
            for i, j in self._edge_list
            if i in index and j in index
        ]
        cost = [self.cost[v] for v in verts]
        return Graph(len(verts), edges, cost), verts

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        cost = [0] * self.n
        for v, c in enumerate(self.cost):
            cost[perm[v]] = c
        return Graph(self.n, [(perm[i], perm[j]) for i, j in self._edge_list], cost)

    def with_costs(self, cost: Sequence) -> Graph:
        return Graph(self.n, self._edge_list, cost)

    def require_connected(self) -> Graph:
        if not self.is_connected():
            raise DisconnectedGraphError(
                f"graph with n={self.n} has {len(self.components())} components"
            )
        return self


# ---------------------------------------------------------------- metadata


def default_beta(n: int) -> int:
    """Size bound on each shore: floor(2n/3), at least 1."""
    return max(1, (2 * n) // 3)


@dataclass(frozen=True)
class InstanceMeta:
    n: int
    e: int
    d: float
    beta: int


def meta(g: Graph, beta: int | None = None) -> InstanceMeta:
    """Vertex/edge counts, density ``2e/(n(n-1))`` and the shore bound."""
    if g.n < 2:
        raise GraphError("density is undefined for fewer than 2 vertices")
    b = default_beta(g.n) if beta is None else beta
    if not 1 <= b <= g.n:
        raise GraphError(f"beta={b} outside [1, {g.n}]")
    d = 2 * g.num_edges / (g.n * (g.n - 1))
    return InstanceMeta(g.n, g.num_edges, d, b)


# ---------------------------------------------------------------- partitions


@dataclass(frozen=True)
class VertexPartition:
    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int]

    @classmethod
    def from_sets(cls, A, B, C) -> VertexPartition:
        return cls(frozenset(A), frozenset(B), frozenset(C))

    def swapped(self) -> VertexPartition:
        return VertexPartition(self.B, self.A, self.C)

    def objective(self, g: Graph):
        """Total cost of the two shores (what the models maximize)."""
        return sum(g.cost[v] for v in self.A) + sum(g.cost[v] for v in self.B)

    def separator_cost(self, g: Graph):
        return sum(g.cost[v] for v in self.C)


@dataclass(frozen=True)
class Verdict:
    feasible: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.feasible


def validate_partition(g: Graph, p: VertexPartition, beta: int) -> Verdict:
    """Check the shore conditions for ``p``.

    Raises ``ValueError`` when ``p`` is not a partition of the vertex set;
    otherwise reports the first violated condition, if any.
    """
    A, B, C = p.A, p.B, p.C
    if A & B or A & C or B & C:
        raise ValueError("partition classes overlap")
    if (A | B | C) != frozenset(range(g.n)):
        raise ValueError("partition does not cover the vertex set")
    if not A:
        return Verdict(False, "A is empty")
    if not B:
        return Verdict(False, "B is empty")
    for i in sorted(A):
        for j in sorted(g.adj[i]):
            if j in B:
                return Verdict(False, f"edge ({i}, {j}) joins A and B")
    if len(A) > beta:
        return Verdict(False, f"|A|={len(A)} exceeds beta={beta}")
    if len(B) > beta:
        return Verdict(False, f"|B|={len(B)} exceeds beta={beta}")
    return Verdict(True)


# ---------------------------------------------------------------- DIMACS


def parse_dimacs_col(data, *, require_connected: bool = False) -> Graph:
    """Parse a DIMACS COLOR (``.col``) file.

    Duplicate ``e`` lines and both orientations of an edge collapse into a
    single undirected edge; vertex ids are shifted to 0-based.
    """
    text = _as_text(data)
    n = None
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "cn%":
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: second problem line")
            if len(parts) < 4:
                raise ParseError(f"line {lineno}: malformed problem line {line!r}")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
        elif tag == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before problem line")
            try:
                i, j = int(parts[1]), int(parts[2])
            except (IndexError, ValueError):
                raise ParseError(f"line {lineno}: malformed edge {line!r}") from None
            if not (1 <= i <= n and 1 <= j <= n):
                raise ParseError(f"line {lineno}: vertex id out of range in {line!r}")
            if i == j:
                raise ParseError(f"line {lineno}: self-loop on vertex {i}")
            edges.add((min(i, j) - 1, max(i, j) - 1))
        else:
            raise ParseError(f"line {lineno}: unknown line type {tag!r}")
    if n is None:
        raise ParseError("missing 'p edge N M' header")
    g = Graph(n, edges)
    if require_connected:
        g.require_connected()
    return g


def write_dimacs_col(g: Graph, comment: str | None = None) -> str:
    out = io.StringIO()
    if comment:
        for line in comment.splitlines():
            out.write(f"c {line}\n")
    out.write(f"p edge {g.n} {g.num_edges}\n")
    for i, j in g.edge_list():
        out.write(f"e {i + 1} {j + 1}\n")
    return out.getvalue()


# ---------------------------------------------------------------- MatrixMarket


@dataclass(frozen=True)
class SparsePattern:
    """Structural nonzero positions of a matrix (0-based)."""

    nrows: int
    ncols: int
    entries: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.entries)


def parse_matrix_market(data) -> SparsePattern:
    """Read the nonzero pattern of a MatrixMarket coordinate file.

    Symmetric, skew-symmetric and hermitian storage is expanded. Explicit
    zeros stored in the file are still structural entries.
    """
    text = _as_text(data)
    lines = iter(text.splitlines())
    header = next(lines, "").strip()
    tokens = header.lower().split()
    if len(tokens) < 5 or tokens[0] != "%%matrixmarket" or tokens[1] != "matrix":
        raise ParseError(f"malformed MatrixMarket header {header!r}")
    if tokens[2] != "coordinate":
        raise ParseError(f"only coordinate format is supported, got {tokens[2]!r}")
    field, symmetry = tokens[3], tokens[4]
    if symmetry not in ("general", "symmetric", "skew-symmetric", "hermitian"):
        raise ParseError(f"unknown symmetry {symmetry!r}")
    size = None
    for line in lines:
        s = line.strip()
        if s and not s.startswith("%"):
            size = s.split()
            break
    if size is None or len(size) < 3:
        raise ParseError("missing size line")
    try:
        nrows, ncols, nnz = (int(t) for t in size[:3])
    except ValueError:
        raise ParseError(f"malformed size line {' '.join(size)!r}") from None
    entries = set()
    count = 0
    for line in lines:
        s = line.strip()
        if not s or s.startswith("%"):
            continue
        parts = s.split()
        try:
            r, c = int(parts[0]), int(parts[1])
        except (IndexError, ValueError):
            raise ParseError(f"malformed entry {s!r}") from None
        if not (1 <= r <= nrows and 1 <= c <= ncols):
            raise ParseError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
        if field != "pattern" and len(parts) < 3:
            raise ParseError(f"entry {s!r} is missing its value")
        entries.add((r - 1, c - 1))
        if symmetry != "general" and r != c:
            entries.add((c - 1, r - 1))
        count += 1
    if count != nnz:
        raise ParseError(f"header announces {nnz} entries, found {count}")
    return SparsePattern(nrows, ncols, frozenset(entries))


def write_matrix_market(p: SparsePattern) -> str:
    out = io.StringIO()
    out.write("%%MatrixMarket matrix coordinate pattern general\n")
    out.write(f"{p.nrows} {p.ncols} {len(p.entries)}\n")
    for r, c in sorted(p.entries):
        out.write(f"{r + 1} {c + 1}\n")
    return out.getvalue()


def intersection_graph(pattern: SparsePattern, *, require_connected: bool = True) -> Graph:
    """Column intersection graph: columns sharing a nonzero row are adjacent."""
    if not pattern.entries:
        raise GraphError("empty sparsity pattern")
    rows: dict[int, list[int]] = {}
    for r, c in pattern.entries:
        rows.setdefault(r, []).append(c)
    edges = set()
    for cols in rows.values():
        cols.sort()
        for a in range(len(cols)):
            for b in range(a + 1, len(cols)):
                edges.add((cols[a], cols[b]))
    g = Graph(pattern.ncols, edges)
    if require_connected:
        g.require_connected()
    return g


# ---------------------------------------------------------------- costs / files


def parse_costs(data, n: int) -> list[Fraction]:
    """Read ``vertex_id cost`` lines (1-based ids); unlisted vertices cost 1."""
    cost = [Fraction(1)] * n
    for lineno, raw in enumerate(_as_text(data).splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'vertex cost', got {raw!r}")
        try:
            v = int(parts[0])
            c = Fraction(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: malformed cost line {raw!r}") from None
        if not 1 <= v <= n:
            raise ParseError(f"line {lineno}: vertex {v} out of range")
        if c < 0:
            raise ParseError(f"line {lineno}: negative cost")
        cost[v - 1] = c
    return cost


def read_graph(path, fmt: str | None = None, *, require_connected: bool = True) -> Graph:
    """Load a graph from a ``.col`` or ``.mtx`` file (format guessed by suffix)."""
    path = os.fspath(path)
    if fmt is None:
        fmt = "mm" if path.endswith(".mtx") else "dimacs"
    with open(path, "rb") as fh:
        data = fh.read()
    if fmt == "dimacs":
        return parse_dimacs_col(data, require_connected=require_connected)
    if fmt == "mm":
        return intersection_graph(parse_matrix_market(data), require_connected=require_connected)
    raise ValueError(f"unknown format {fmt!r}")
