from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs
from oracles import brute_mcc, max_mono
from mccolor.exact import (check_witness, coloring_adversary_report, connected_sets, density_lower_bound,
                           exact_mcc, greedy_edge_coloring, naive_mcc, random_edge_coloring,
                           sampled_densities)
from mccolor.generators import gen_complete, gen_cycle, gen_fan, gen_grid_diag, gen_hamming_cube
from mccolor.graph import Graph, GraphError, line_graph


def test_triangle_examples():
    k3 = gen_complete(3)
    assert naive_mcc(k3, 2).value == 2
    assert naive_mcc(k3, 3).value == 1
    assert exact_mcc(k3, 2).value == 2


def test_fan4_example():
    g, _ = gen_fan(4)
    assert naive_mcc(g, 2).value == 2 == exact_mcc(g, 2).value


def test_grid_d3_exact():
    assert exact_mcc(gen_grid_diag(3, 2), 2).value == 3


@pytest.mark.parametrize("n", [2, 5, 8])
def test_bipartite_is_one(n):
    g = gen_cycle(2 * n) if n > 1 else Graph(2, [(0, 1)])
    assert exact_mcc(g, 2).value == 1


def test_edgeless_and_empty():
    assert exact_mcc(Graph(0), 2).value == 0
    assert exact_mcc(Graph(4), 1).value == 1
    assert exact_mcc(gen_complete(4), 1).value == 4


def test_budget_flags_inexact():
    g = gen_grid_diag(4, 2)
    res = exact_mcc(g, 2, node_budget=3)
    assert not res.exact
    assert check_witness(g, res)


def test_naive_size_guard():
    with pytest.raises(GraphError):
        naive_mcc(Graph(25), 2)


def test_multigraph_rejected():
    with pytest.raises(GraphError):
        exact_mcc(Graph(2, [(0, 1), (0, 1)], multi=True), 2)


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=8), st.integers(1, 3))
def test_exact_matches_brute_force(g, t):
    want = brute_mcc(g.n, g.edges, t)
    res = exact_mcc(g, t)
    assert res.exact and res.value == want
    assert max_mono(g.n, g.edges, res.witness.colors) == want
    assert naive_mcc(g, t).value == want


# ---------------------------------------------------------------- density


def test_connected_sets_enumerates_each_once():
    g = gen_cycle(6)
    sets = list(connected_sets(g, 3))
    assert len(sets) == len({frozenset(s) for s in sets})
    assert len(sets) == 6 + 6 + 6  # vertices, edges, 3-paths


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=8, min_n=1), st.integers(1, 4))
def test_connected_sets_match_networkx(g, p):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    from itertools import combinations
    want = {frozenset(c) for k in range(1, p + 1) for c in combinations(range(g.n), k)
            if nx.is_connected(G.subgraph(c))}
    assert {frozenset(s) for s in connected_sets(g, p)} == want


def test_density_cycle_is_not_certified():
    cert = density_lower_bound(gen_cycle(6), 2, 3)
    assert not cert.valid and cert.exhaustive
    assert cert.dbar == 2
    assert len(cert.violation) == 2  # a single edge has average degree 1, not < 1


def test_density_k4_certifies_two():
    cert = density_lower_bound(gen_complete(4), 2, 2)
    assert cert.valid and cert.dbar == 3
    lk4, _ = line_graph(gen_complete(4))
    assert exact_mcc(lk4, 2).value >= 2


def test_density_sampled_mode():
    h = gen_hamming_cube(6)
    cert = density_lower_bound(h, 2, 12, cap=100, samples=200)
    assert not cert.valid and not cert.exhaustive
    assert cert.samples == 200 and cert.sampled_max is not None


def test_sampled_densities_bounds():
    vals = sampled_densities(gen_hamming_cube(5), 8, 300, seed=0)
    assert len(vals) == 300
    assert all(0 <= v <= 5 for v in vals)


# ---------------------------------------------------------------- adversary


def test_adversary_majority_component_is_dense_enough():
    h = gen_hamming_cube(4)
    for seed in range(10):
        cols = random_edge_coloring(h, seed)
        rep = coloring_adversary_report(h, cols)
        assert rep.densest_avg_degree >= rep.dbar_over_t
        assert rep.max_mono_edges >= rep.largest_edges


def test_adversary_on_known_coloring():
    # path 0-1-2-3 with edge colors 0 0 1: majority class is color 0 with 2 edges
    h = Graph(4, [(0, 1), (1, 2), (2, 3)])
    rep = coloring_adversary_report(h, [0, 0, 1])
    assert rep.majority_color == 0 and rep.largest_edges == 2 and rep.largest_vertices == 3
    assert rep.largest_avg_degree == Fraction(4, 3)
    with pytest.raises(GraphError):
        coloring_adversary_report(h, [0])


def test_edge_colorings_are_balanced_and_valid():
    h = gen_hamming_cube(4)
    cols = random_edge_coloring(h, 1)
    assert abs(cols.count(0) - cols.count(1)) <= 1
    g = greedy_edge_coloring(h, 1)
    assert len(g) == h.m and set(g) <= {0, 1}
    assert random_edge_coloring(h, 1) == cols
