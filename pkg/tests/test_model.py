import itertools
from fractions import Fraction

import numpy as np
import pytest

from vsp.connectivity import alpha_subgraph, alpha_table
from vsp.errors import AdjacentPairError, GraphError
from vsp.graph import Graph, VertexPartition, default_beta
from vsp.instances import complete_graph, connected_graphs, cycle_graph, path_graph
from vsp.lp import GE, LE
from vsp.model import (
    CutPool,
    LinearConstraint,
    alpha_pair_inequalities,
    build_ab_model,
    build_full_model,
    chain_inequality,
    path_inequality,
    separate_alpha_pairs,
    separate_chain,
    separate_paths,
    separate_subgraphs,
    subgraph_candidates,
    subgraph_inequality,
)
from vsp.polytope import all_inequalities, simple_paths
from vsp.solver import SolverConfig, brute_force, solve

from .conftest import naive_ab_points, naive_partitions, random_graphs


def integral_points(m):
    """All 0/1 points within the column bounds satisfying every base row."""
    free = [j for j in range(m.num_cols) if m.lower[j] != m.upper[j]]
    base = np.array(m.lower, dtype=int)
    for bits in itertools.product((0, 1), repeat=len(free)):
        x = base.copy()
        x[free] = bits
        if all(c.satisfied_exact(x) for c in m.constraints):
            yield tuple(int(v) for v in x)


def ab_optimum(m):
    pts = list(integral_points(m))
    return max(m.objective_value(p) for p in pts) if pts else None


# ---------------------------------------------------------------- constraints and pool


def test_linear_constraint_drops_zero_terms_and_checks_tags():
    c = LinearConstraint.make({0: 1, 1: 0, 2: Fraction(1, 2)}, LE, 1, "chain")
    assert c.terms == ((0, Fraction(1)), (2, Fraction(1, 2)))
    with pytest.raises(ValueError):
        LinearConstraint.make({0: 1}, LE, 1, "mystery")
    with pytest.raises(ValueError):
        LinearConstraint.make({0: 1}, "<", 1, "base")
    x = [1, 0, 1]
    assert c.satisfied_exact(x) is False
    assert c.violation(x) == pytest.approx(0.5)


def test_cut_pool_deduplicates_and_orders():
    pool = CutPool()
    a = LinearConstraint.make({1: 1}, LE, 0, "subgraph")
    b = LinearConstraint.make({0: 1}, LE, 0, "chain")
    added = pool.add([a, b, a])
    assert added == [b, a]
    assert pool.add([LinearConstraint.make({1: 1}, LE, 0, "subgraph")]) == []
    assert len(pool) == 2 and pool.counts() == {"chain": 1, "subgraph": 1}
    assert a in pool


# ---------------------------------------------------------------- ab model


def test_ab_model_columns_and_fixings():
    g = cycle_graph(5)
    m = build_ab_model(g, 0, 2, 3)
    assert m.free == [1, 3, 4]
    assert m.num_cols == 6
    # vertex 1 touches both a and b: both columns fixed to zero
    assert m.upper[m.col(1, "a")] == 0 and m.upper[m.col(1, "b")] == 0
    assert m.upper[m.col(4, "b")] == 0 and m.upper[m.col(4, "a")] == 1
    assert m.upper[m.col(3, "a")] == 0 and m.upper[m.col(3, "b")] == 1
    with pytest.raises(AdjacentPairError):
        build_ab_model(g, 0, 1, 3)


def test_ab_model_path_three():
    m = build_ab_model(path_graph(3), 0, 2, 2)
    assert list(integral_points(m)) == [(0, 0)]
    assert ab_optimum(m) == 0


def test_ab_model_four_cycle():
    m = build_ab_model(cycle_graph(4), 0, 2, 2)
    assert ab_optimum(m) == 0


def test_ab_model_five_vertex_path_and_five_cycle():
    # a-u-v-w-b as a chord-free path: u in A and w in B leave only v in C
    assert ab_optimum(build_ab_model(path_graph(5), 0, 4, 3)) == 2
    # on a genuine 5-cycle the extra a-b route through the fifth vertex costs one more
    assert ab_optimum(build_ab_model(cycle_graph(5), 0, 2, 3)) == 1


def test_ab_model_points_are_exactly_the_ab_separators():
    for n in range(3, 7):
        for g in connected_graphs(n):
            beta = default_beta(n)
            for a, b in g.non_adjacent_pairs():
                m = build_ab_model(g, a, b, beta)
                assert set(integral_points(m)) == naive_ab_points(g, a, b, beta)


# ---------------------------------------------------------------- full model


def test_full_model_shape():
    g = path_graph(3)
    m = build_full_model(g, 2, 1)
    assert m.num_cols == 6 and m.mode == "fictitious"
    assert [float(c) for c in m.objective] == [1.0] * 6
    rows = {c.origin for c in m.constraints}
    assert rows == {"base", "bound"}
    with pytest.raises(GraphError):
        build_full_model(g, 0, 1)


def test_full_model_path_three_optimum():
    m = build_full_model(path_graph(3), 2, 1)
    assert max(m.objective_value(p) for p in integral_points(m)) == 2


def test_full_model_cardinality_row():
    g = cycle_graph(8)
    m = build_full_model(g, default_beta(8), 2)
    card = [c for c in m.constraints if c.origin == "bound" and len(c.terms) == 16]
    assert len(card) == 1 and card[0].rhs == 8 - 2


def test_full_model_integral_points_match_partitions():
    """With the <= reading of the per-edge rows, integral points are exactly the
    feasible partitions whose A side respects the symmetry-breaking cap."""
    for g in random_graphs(25, 3, 5, seed=5) + [path_graph(4), cycle_graph(5)]:
        beta = default_beta(g.n)
        am = alpha_table(g).alpha_min
        m = build_full_model(g, beta, am)
        pts = set(integral_points(m))
        want = set()
        cap = (g.n - am) // 2
        for A, B in naive_partitions(g, beta):
            if len(A) <= cap:
                want.add(tuple(int(x) for x in m.encode(VertexPartition.from_sets(A, B, set(range(g.n)) - A - B))))
        assert pts == want


def test_encode_decode_round_trip():
    g = cycle_graph(6)
    ref = brute_force(g, 2)
    m = build_full_model(g, 2, 2)
    p = ref.partition if len(ref.partition.A) <= len(ref.partition.B) else ref.partition.swapped()
    assert m.decode(m.encode(p)) == p
    mab = build_ab_model(g, min(p.A), min(p.B), 2)
    assert mab.decode(mab.encode(p)) == p


def test_decode_rejects_bad_points():
    m = build_full_model(path_graph(3), 2, 1)
    with pytest.raises(ValueError):
        m.decode(np.zeros(6))  # empty shores break the >= 1 rows
    with pytest.raises(ValueError):
        m.decode(np.full(6, 0.5))
    with pytest.raises(ValueError):
        m.decode(np.zeros(5))
    x = np.zeros(6)
    x[m.col(0, "a")] = x[m.col(1, "b")] = 1
    with pytest.raises(ValueError):
        m.decode(x)


def test_lp_text_export():
    m = build_full_model(path_graph(3), 2, 1)
    text = m.to_lp_text()
    for section in ("Maximize", "Subject To", "Bounds", "Binaries", "End"):
        assert section in text
    assert "x_1_a + x_1_b <= 1" in text


# ---------------------------------------------------------------- chains


def test_chain_inequality_examples():
    g = path_graph(3)
    m = build_ab_model(g, 0, 2, 2)
    c = chain_inequality(m, [0, 1, 2])
    assert c.terms == ((m.col(1, "a"), 1), (m.col(1, "b"), 1)) and c.rhs == 0
    g = path_graph(4)
    m = build_ab_model(g, 0, 3, 3)
    c = chain_inequality(m, [0, 1, 2, 3])
    assert len(c.terms) == 4 and c.rhs == 1 and c.origin == "chain"


def test_chain_inequality_errors():
    g = cycle_graph(5)
    m = build_ab_model(g, 0, 2, 3)
    with pytest.raises(ValueError):
        chain_inequality(m, [0, 2])
    with pytest.raises(ValueError):
        chain_inequality(m, [0, 1, 3])
    with pytest.raises(ValueError):
        chain_inequality(m, [1, 2])


def test_separate_chain_examples():
    g = path_graph(3)
    m = build_ab_model(g, 0, 2, 2)
    m.upper = [1, 1]
    assert separate_chain(m, np.zeros(2)) is None
    cut = separate_chain(m, np.array([0.6, 0.6]))
    assert cut is not None and cut.rhs == 0 and len(cut.terms) == 2
    with pytest.raises(ValueError):
        separate_chain(build_full_model(g, 2, 1), np.zeros(6))


def _random_point(m, rng):
    x = np.zeros(m.num_cols)
    for v in m.free:
        if rng.random() < 0.25:
            continue
        t = rng.random()
        s = rng.random()
        x[m.col(v, "a")] = min(t, m.upper[m.col(v, "a")])
        x[m.col(v, "b")] = min((1 - t) * s, m.upper[m.col(v, "b")])
    return x


def test_separate_chain_is_exact(rng):
    for g in random_graphs(30, 4, 8, seed=11):
        a, b = g.non_adjacent_pairs()[0]
        m = build_ab_model(g, a, b, default_beta(g.n))
        chains = [chain_inequality(m, p) for p in simple_paths(g, a, b)]
        for _ in range(10):
            x = _random_point(m, rng)
            worst = max(c.violation(x) for c in chains)
            cut = separate_chain(m, x)
            if worst > 1e-6:
                assert cut is not None
                assert cut.violation(x) == pytest.approx(worst)
            else:
                assert cut is None


def test_separate_paths_is_exact(rng):
    for g in random_graphs(20, 4, 7, seed=12):
        m = build_full_model(g, default_beta(g.n), alpha_table(g).alpha_min)
        ineqs = [
            path_inequality(m, p)
            for i, j in itertools.permutations(range(g.n), 2)
            if not g.has_edge(i, j)
            for p in simple_paths(g, i, j)
        ]
        for _ in range(10):
            x = _random_point(m, rng)
            worst = max(c.violation(x) for c in ineqs)
            found = separate_paths(m, x, limit=1000)
            if worst > 1e-6:
                assert found and found[0].violation(x) == pytest.approx(worst)
            else:
                assert not found
            assert all(c.violation(x) > 1e-6 for c in found)


# ---------------------------------------------------------------- alpha pairs


def test_alpha_pair_reduces_to_separator_size_bound():
    g = cycle_graph(6)
    table = alpha_table(g)
    m = build_full_model(g, 4, table.alpha_min)
    c11, c12 = alpha_pair_inequalities(m, table, 0, 3)
    # i in A, j in B: activity = |A| + |B| + 2 alpha <= n + alpha  <=>  |C| >= alpha
    p = VertexPartition.from_sets({0}, {3}, {1, 2, 4, 5})
    assert c11.satisfied_exact(m.encode(p))
    tight = VertexPartition.from_sets({0, 1}, {3, 4}, {2, 5})
    assert c11.activity(m.encode(tight)) == float(c11.rhs)
    # with both indicator columns at 0 and total mass n the slack is alpha
    x = np.zeros(m.num_cols)
    for v in range(g.n):
        x[m.col(v, "a" if v == 3 else "b")] = 1.0
    assert float(c11.rhs) - c11.activity(x) == pytest.approx(table[(0, 3)])
    with pytest.raises(AdjacentPairError):
        alpha_pair_inequalities(m, table, 0, 1)
    assert c12 != c11


def test_alpha_pairs_hand_computed_violation():
    # 4-cycle 0-1-2-3 plus chord 0-2: only pair (1, 3), alpha = 2
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    table = alpha_table(g)
    assert table.alpha == {(1, 3): 2}
    m = build_full_model(g, 2, 2)
    x = np.full(8, 0.5)
    # total = 4, violation = 4 - 4 + 2 * (0.5 + 0.5 - 1) = 0 -> nothing
    assert separate_alpha_pairs(m, x, table) == []
    x[m.col(1, "a")] = x[m.col(3, "b")] = 0.9
    # total = 4.8; orientation (1, 3): 0.8 + 2 * 0.8 = 2.4; orientation (3, 1): 0.8 + 0 = 0.8
    cuts = separate_alpha_pairs(m, x, table)
    assert [round(c.violation(x), 6) for c in cuts] == [2.4, 0.8]
    one = separate_alpha_pairs(m, x, table, limit=1)
    assert one == cuts[:1]


def test_alpha_pairs_empty_on_integral_feasible_points():
    for g in random_graphs(10, 5, 9, seed=13):
        table = alpha_table(g)
        beta = default_beta(g.n)
        ref = brute_force(g, beta)
        if ref.status != "optimal":
            continue
        m = build_full_model(g, beta, table.alpha_min)
        p = ref.partition if len(ref.partition.A) <= len(ref.partition.B) else ref.partition.swapped()
        assert separate_alpha_pairs(m, m.encode(p).astype(float), table) == []


def test_alpha_pairs_in_ab_mode_skip_fixed_vertices():
    g = cycle_graph(7)
    table = alpha_table(g)
    m = build_ab_model(g, 0, 3, 4)
    with pytest.raises(ValueError):
        alpha_pair_inequalities(m, table, 0, 2)
    c, _ = alpha_pair_inequalities(m, table, 1, 4)
    assert all(j < m.num_cols for j, _ in c.terms)


# ---------------------------------------------------------------- subgraphs


def test_subgraph_inequality_seven_cycle():
    g = cycle_graph(7)
    m = build_full_model(g, 4, 2)
    c = subgraph_inequality(m, range(7), alpha_subgraph(g, range(7)))
    assert c.rhs == 5 and len(c.terms) == 14


def test_subgraph_inequality_whole_graph_uses_alpha_min():
    g = cycle_graph(9)
    m = build_full_model(g, 6, 2)
    c = subgraph_inequality(m, range(9), 2)
    assert c.rhs == 9 - min(2, 9 - 6)


def test_subgraph_inequality_errors():
    g = cycle_graph(7)
    m = build_full_model(g, 4, 2)
    with pytest.raises(ValueError):
        subgraph_inequality(m, [0, 1, 2, 3], 1)
    with pytest.raises(GraphError):
        subgraph_inequality(m, [0, 1, 2, 4, 5], 1)


def test_subgraph_candidates():
    g = cycle_graph(9)
    cands = subgraph_candidates(g, 6, 2)
    assert cands[0] == (tuple(range(9)), min(2, 9 - 6))
    assert all(len(vs) == 7 for vs, _ in cands[1:])
    assert len({vs for vs, _ in cands}) == len(cands) <= 18
    for vs, a0 in cands:
        assert a0 == min(alpha_subgraph(g, vs), len(vs) - 6)
    assert len(subgraph_candidates(g, 6, 2, cap=3)) == 3
    assert subgraph_candidates(complete_graph(5), 3) == []


def test_separate_subgraphs_finds_violations():
    g = cycle_graph(7)
    m = build_full_model(g, 4, 2)
    cands = subgraph_candidates(g, 4, 2)
    x = np.full(m.num_cols, 0.45)
    cuts = separate_subgraphs(m, x, cands)
    assert cuts and all(c.violation(x) > 0 for c in cuts)
    assert separate_subgraphs(m, np.zeros(m.num_cols), cands) == []


# ---------------------------------------------------------------- validity and equivalence


def _check_all_valid(g, beta):
    table = alpha_table(g)
    full = build_full_model(g, beta, table.alpha_min)
    parts = [VertexPartition.from_sets(A, B, set(range(g.n)) - A - B) for A, B in naive_partitions(g, beta)]
    cuts = [c for c in all_inequalities(full, table) if c.origin != "base" and c.origin != "bound"]
    for p in parts:
        x = full.encode(p)
        assert all(c.satisfied_exact(x) for c in cuts)
        if len(p.A) <= len(p.B):
            assert all(c.satisfied_exact(x) for c in full.constraints)
    for a, b in g.non_adjacent_pairs()[:3]:
        m = build_ab_model(g, a, b, beta)
        ineqs = all_inequalities(m, table)
        for p in parts:
            if a in p.A and b in p.B:
                x = m.encode(p)
                assert all(c.satisfied_exact(x) for c in ineqs)


def test_every_inequality_is_valid_small_exhaustive():
    for n in range(3, 6):
        for g in connected_graphs(n):
            if not g.is_complete():
                _check_all_valid(g, default_beta(n))


def test_every_inequality_is_valid_random():
    for g in random_graphs(6, 7, 8, seed=14):
        _check_all_valid(g, default_beta(g.n))


def test_full_model_matches_best_ab_model():
    for g in random_graphs(12, 5, 9, seed=15):
        beta = default_beta(g.n)
        ref = brute_force(g, beta)
        full = solve(g, beta)
        pairs = solve(g, beta, SolverConfig(strategy="pairs"))
        assert full.status == pairs.status == ref.status
        if ref.status == "optimal":
            assert full.objective == pairs.objective == ref.objective
        if g.n <= 7:
            best = max(
                (ab_optimum(build_ab_model(g, a, b, beta)) for a, b in g.non_adjacent_pairs()),
                key=lambda v: -1 if v is None else v,
            )
            if ref.status == "optimal":
                assert best + 2 == ref.objective
