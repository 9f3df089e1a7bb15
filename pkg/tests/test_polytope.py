import itertools
from fractions import Fraction

import numpy as np
import pytest

from vsp.errors import AdjacentPairError, GuardError
from vsp.graph import Graph, VertexPartition, default_beta
from vsp.instances import complete_bipartite, connected_graphs, cycle_graph, path_graph
from vsp.model import build_ab_model
from vsp.polytope import (
    EdgeIncidence,
    EdgeSystem,
    _worst_odd_subset,
    affine_dimension,
    all_inequalities,
    check_edge_system,
    correspondence_report,
    enumerate_ab_separators,
    expected_dimension,
    fractional_vertices,
    simple_cycles,
    simple_paths,
    vertex_to_edge,
)

from .conftest import naive_ab_points, reachable, random_graphs


# ---------------------------------------------------------------- enumeration


def test_path_three_has_a_single_separator():
    ps = enumerate_ab_separators(path_graph(3), 0, 2, 2)
    assert ps.points == ((0, 0),)
    assert ps.partitions() == [VertexPartition.from_sets({0}, {2}, {1})]


def test_path_four_points():
    ps = enumerate_ab_separators(path_graph(4), 0, 3, 3)
    # middle vertices 1, 2: (C, C), (A, C), (C, B)
    assert len(ps) == 3
    assert set(ps.points) == {(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1)}


def test_enumeration_matches_naive_labelings():
    for g in random_graphs(25, 3, 8, seed=60):
        for a, b in g.non_adjacent_pairs()[:3]:
            for beta in (default_beta(g.n), g.n - 1, 2):
                ps = enumerate_ab_separators(g, a, b, beta)
                assert set(ps.points) == naive_ab_points(g, a, b, beta)
                assert len(set(ps.points)) == len(ps)


def test_enumeration_columns_match_the_ab_model():
    g = cycle_graph(6)
    ps = enumerate_ab_separators(g, 0, 3)
    m = build_ab_model(g, 0, 3, default_beta(6))
    assert list(ps.columns) == list(m.col_names)


def test_enumeration_guards():
    with pytest.raises(GuardError):
        enumerate_ab_separators(path_graph(15), 0, 14)
    with pytest.raises(AdjacentPairError):
        enumerate_ab_separators(path_graph(4), 0, 1)


# ---------------------------------------------------------------- dimension


def test_affine_dimension_examples():
    with pytest.raises(ValueError):
        affine_dimension([])
    assert affine_dimension([(0, 0)]) == 0
    assert affine_dimension([(0, 0), (1, 0), (0, 1)]) == 2
    assert affine_dimension([(1, 1, 0), (2, 2, 0), (3, 3, 0)]) == 1


def test_affine_dimension_matches_numpy_rank(rng):
    for _ in range(40):
        k, d = rng.randint(1, 8), rng.randint(1, 7)
        pts = [tuple(rng.randint(0, 1) for _ in range(d)) for _ in range(k)]
        diffs = np.array(pts, dtype=float)[1:] - np.array(pts[0], dtype=float)
        want = int(np.linalg.matrix_rank(diffs)) if len(pts) > 1 else 0
        assert affine_dimension(pts) == want


def test_dimension_formula_examples():
    g = path_graph(4)
    assert expected_dimension(g, 0, 3) == 2 * 2 - 1 - 1
    assert affine_dimension(enumerate_ab_separators(g, 0, 3, g.n)) == 2
    g = cycle_graph(6)
    assert expected_dimension(g, 0, 3) == 2 * 4 - 4


def test_dimension_formula_on_small_graphs():
    for n in range(3, 6):
        for g in connected_graphs(n):
            for a, b in g.non_adjacent_pairs():
                ps = enumerate_ab_separators(g, a, b, default_beta(n))
                assert affine_dimension(ps) == expected_dimension(g, a, b)


def test_dimension_is_invariant_under_relabeling(rng):
    for g in random_graphs(10, 5, 8, seed=61):
        a, b = g.non_adjacent_pairs()[0]
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        d1 = affine_dimension(enumerate_ab_separators(g, a, b))
        d2 = affine_dimension(enumerate_ab_separators(h, perm[a], perm[b]))
        assert d1 == d2


# ---------------------------------------------------------------- paths and cycles


def test_simple_paths_and_cycles_small():
    assert simple_paths(path_graph(3), 0, 2) == [[0, 1, 2]]
    assert sorted(map(tuple, simple_paths(cycle_graph(4), 0, 2))) == [(0, 1, 2), (0, 3, 2)]
    assert len(simple_cycles(cycle_graph(5))) == 1
    assert simple_cycles(path_graph(5)) == []
    # K4 has 4 triangles and 3 four-cycles
    k4 = Graph(4, list(itertools.combinations(range(4), 2)))
    assert sorted(len(c) for c in simple_cycles(k4)) == [3, 3, 3, 3, 4, 4, 4]


def test_simple_paths_are_simple_and_complete():
    for g in random_graphs(10, 4, 7, seed=62):
        a, b = g.non_adjacent_pairs()[0]
        paths = simple_paths(g, a, b)
        assert len({tuple(p) for p in paths}) == len(paths)
        for p in paths:
            assert len(set(p)) == len(p) and p[0] == a and p[-1] == b
            assert all(g.has_edge(u, v) for u, v in zip(p, p[1:]))
        # removing every path's internal vertices must disconnect a and b
        inner = {v for p in paths for v in p[1:-1]}
        assert b not in reachable(g, a, inner)


def test_all_inequalities_origins():
    g = cycle_graph(5)
    m = build_ab_model(g, 0, 2, 3)
    origins = {c.origin for c in all_inequalities(m)}
    assert {"base", "chain", "alpha_pair", "subgraph"} <= origins


# ---------------------------------------------------------------- vertex to edge


def test_vertex_to_edge_path():
    g = path_graph(3)
    chi = vertex_to_edge(g, VertexPartition.from_sets({0}, {2}, {1}))
    assert chi.vector() == (1, 1)
    assert chi.labels == {(0, 1): "F1", (1, 2): "F2"}


def test_vertex_to_edge_errors():
    g = path_graph(3)
    with pytest.raises(ValueError):
        vertex_to_edge(g, VertexPartition.from_sets({0}, {1}, {2}))
    with pytest.raises(ValueError):
        vertex_to_edge(g, VertexPartition.from_sets({0}, {2}, set()))
    with pytest.raises(ValueError):
        EdgeIncidence(g, {(0, 1): Fraction(1)})


def test_vertex_to_edge_cut_is_bipartite():
    for g in random_graphs(15, 4, 9, seed=63):
        a, b = g.non_adjacent_pairs()[0]
        for p in enumerate_ab_separators(g, a, b).partitions():
            chi = vertex_to_edge(g, p)
            for (i, j), v in chi.values.items():
                if v:
                    # exactly one end in C, the other end on the labelled shore
                    assert (i in p.C) != (j in p.C)
                    other = j if i in p.C else i
                    assert (other in p.A) == (chi.labels[(i, j)] == "F1")
            assert chi.support() == {e for e, lab in chi.labels.items() if lab}


def test_edge_incidence_from_values():
    g = cycle_graph(4)
    # values follow g.edge_list(): (0, 1), (0, 3), (1, 2), (2, 3)
    chi = EdgeIncidence.from_values(g, [1, 0, Fraction(1, 2), 1])
    assert chi[(3, 0)] == 0 and chi[(2, 1)] == Fraction(1, 2)
    same = EdgeIncidence.from_values(g, {(1, 0): 1, (3, 0): 0, (2, 1): 0.5, (3, 2): 1})
    assert same.vector() == chi.vector()


# ---------------------------------------------------------------- edge system


def test_all_ones_on_a_path():
    rep = check_edge_system(path_graph(3), 0, 2, [1, 1])
    assert rep.ok and rep.num_chains == 1 and rep.num_cycles == 0


def test_all_zero_breaks_the_chain_rows():
    rep = check_edge_system(cycle_graph(4), 0, 2, [0, 0, 0, 0])
    assert not rep.holds("chain")
    # a single edge as the odd subset is tight at zero, so parity rows hold
    assert rep.holds("cycle_parity") and rep.holds("chain_parity")


def test_odd_cycle_load_breaks_parity():
    rep = check_edge_system(cycle_graph(5), 0, 2, [1, 1, 1, 0, 0])
    assert not rep.holds("cycle_parity")


def test_worst_odd_subset_matches_brute_force(rng):
    for _ in range(300):
        k = rng.randint(1, 7)
        vals = [rng.choice([0.0, 1.0, 0.5, rng.random()]) for _ in range(k)]
        best = max(
            sum(vals[s] for s in S) - sum(vals[s] for s in range(k) if s not in S) - len(S) + 1
            for r in range(1, k + 1, 2)
            for S in itertools.combinations(range(k), r)
        )
        got, S = _worst_odd_subset(vals)
        assert got == pytest.approx(best)
        assert len(S) % 2 == 1


def test_vectorized_check_matches_explicit_rows(rng):
    for g in random_graphs(10, 4, 6, seed=64):
        a, b = g.non_adjacent_pairs()[0]
        system = EdgeSystem(g, a, b)
        A, sense, rhs = system.rows()
        for _ in range(10):
            x = np.array([rng.choice([0.0, 1.0, rng.random()]) for _ in range(g.num_edges)])
            act = A @ x
            want = all(
                (act[r] >= rhs[r] - 1e-9) if sense[r] == ">=" else (act[r] <= rhs[r] + 1e-9)
                for r in range(len(rhs))
            )
            assert bool(system.satisfied(x)[0]) == want == system.check(x).ok


def test_separator_images_satisfy_the_edge_system():
    for g in random_graphs(15, 4, 9, seed=65):
        for a, b in g.non_adjacent_pairs()[:2]:
            system = EdgeSystem(g, a, b)
            for p in enumerate_ab_separators(g, a, b).partitions():
                assert system.check(vertex_to_edge(g, p)).ok


def test_edge_system_guard():
    with pytest.raises(GuardError):
        EdgeSystem(path_graph(11), 0, 10)


# ---------------------------------------------------------------- correspondence


def test_correspondence_path_and_cycle():
    rep = correspondence_report(path_graph(3), 0, 2)
    assert rep.images == rep.solutions == {(1, 1)}
    rep = correspondence_report(cycle_graph(4), 0, 2)
    assert rep.ok and rep.as_dict()["unexplained"] == 0


def test_correspondence_small_graphs():
    for g in random_graphs(20, 4, 7, seed=66):
        for a, b in g.non_adjacent_pairs()[:2]:
            rep = correspondence_report(g, a, b)
            assert rep.ok
            assert rep.solutions == rep.images | rep.beta_only


def test_cut_space_scan_agrees_with_exhaustive_scan():
    for g in random_graphs(12, 4, 7, seed=67, dens=(0.2, 0.5)):
        if g.num_edges > 12:
            continue
        a, b = g.non_adjacent_pairs()[0]
        r1 = correspondence_report(g, a, b, exhaustive=True)
        r2 = correspondence_report(g, a, b, exhaustive=False)
        assert r1.solutions == r2.solutions


def test_beta_only_points_appear_when_beta_is_tight():
    g = path_graph(5)
    rep = correspondence_report(g, 0, 4, beta=1)
    assert rep.images == {(1, 0, 0, 1)}
    assert rep.beta_only and not rep.unexplained


def test_fractional_vertices_smoke():
    g = complete_bipartite(2, 3)
    pts = fractional_vertices(g, 0, 1, trials=10)
    system = EdgeSystem(g, 0, 1)
    for pt in pts:
        assert any(v.denominator > 1 for v in pt)
        assert system.check([float(v) for v in pt], tol=1e-6).ok
    with pytest.raises(GuardError):
        fractional_vertices(cycle_graph(8), 0, 4, max_rows=3)
