import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import connected_graphs
from oracles import dfs_components
from mccolor.coloring import (audit_run, charging_bound, hamming_cube_edge_coloring, iroot, layer_coloring,
                              t_color_via_separators, threshold, two_color_via_separators)
from mccolor.generators import gen_fan_tower, gen_grid_diag, gen_hamming_cube, gen_rib_planar, gen_tri_grid
from mccolor.graph import Graph, line_graph, max_mono_component
from mccolor.separators import (FallbackProvider, PlanarProvider, SeparatorError, SeparatorProfile,
                                SeparatorResult, TreewidthProvider)


@given(st.integers(0, 10 ** 30), st.integers(1, 7))
def test_iroot(x, k):
    r = iroot(x, k)
    assert r ** k <= x < (r + 1) ** k


@pytest.mark.parametrize("n", [1, 8, 27, 64, 100, 2500, 2 ** 21])
def test_threshold_two_colors_sqrt_profile(n):
    # 1 / (2 - 1/2) = 2/3
    assert threshold(n, 2, Fraction(1, 2)) == iroot(n * n, 3)
    assert threshold(n, 2, Fraction(1, 2)) == math.floor(n ** (2 / 3) + 1e-9)


def test_threshold_gamma_zero_is_tth_root():
    assert threshold(1000, 3, 0) == 10
    assert threshold(999, 3, 0) == 9


def test_charging_bound_formula():
    prof = SeparatorProfile(4, Fraction(1, 2))
    b = charging_bound(1000, 100, prof)
    assert b == pytest.approx(4 * 100 ** -0.5 / (1 - (2 / 3) ** 0.5) * 1000)


def _check_run(g, run):
    assert audit_run(g, run) == []
    zero = [v for v in range(g.n) if run.coloring[v] == run.free_color]
    assert max((len(c) for c in dfs_components(g.n, g.edges, zero)), default=0) <= run.n0


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_two_coloring_ribs(k):
    g, _ = gen_rib_planar(k)
    prov = PlanarProvider()
    run = two_color_via_separators(g, prov.profile(), prov)
    _check_run(g, run)
    assert run.n0 == iroot(g.n ** 2, 3)
    assert run.certificate_valid


def test_two_coloring_grid():
    g = gen_tri_grid(40, 40)
    prov = PlanarProvider()
    run = two_color_via_separators(g, prov.profile(), prov)
    _check_run(g, run)
    assert run.S <= run.bound


def test_small_graph_needs_no_separator():
    g = Graph(3, [(0, 1), (1, 2)])
    run = two_color_via_separators(g, SeparatorProfile(4, Fraction(1, 2)), FallbackProvider())
    assert run.n0 == 2 and run.S == 1


def test_three_colors_on_tower():
    g, td = gen_fan_tower(36)
    prov = TreewidthProvider(td)
    run = t_color_via_separators(g, 3, prov.profile(), prov)
    _check_run(g, run)
    assert run.free_color == 2 and run.inner is not None
    _check_run(g.induced(run.separator_vertices)[0], run.inner)
    assert run.n0 == iroot(g.n, 3)
    rep = max_mono_component(g, run.coloring)
    assert rep.max_component_size <= max(run.n0, run.inner.n0)


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=30, min_n=1), st.integers(2, 4))
def test_fallback_runs_always_audit_clean(g, t):
    prov = FallbackProvider()
    run = t_color_via_separators(g, t, prov.profile(), prov)
    assert audit_run(g, run) == [] or not run.certificate_valid
    rep = max_mono_component(g, run.coloring)
    assert rep.per_color_max[t - 1] <= run.n0


def test_lying_provider_is_caught():
    def bad(g, labels):
        return SeparatorResult((), (tuple(range(g.n)),), g.n)
    with pytest.raises(SeparatorError) as info:
        two_color_via_separators(gen_tri_grid(5, 5), SeparatorProfile(4, Fraction(1, 2)), bad)
    assert info.value.subgraph == list(range(25))


def test_oversized_separators_void_certificate():
    def greedy(g, labels):
        # half of the vertices: balanced but far above 0.01 * sqrt(n)
        from mccolor.separators import separator_result
        return separator_result(g, range(0, g.n, 2)) if g.n > 2 else separator_result(g, [0])
    run = two_color_via_separators(Graph(50, [(i, i + 1) for i in range(49)]),
                                   SeparatorProfile(Fraction(1, 100), Fraction(1, 2)), greedy)
    assert not run.certificate_valid


def test_t_must_be_at_least_two():
    with pytest.raises(ValueError):
        t_color_via_separators(Graph(2, [(0, 1)]), 1, PlanarProvider().profile(), PlanarProvider())


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_layer_coloring_on_2d_grid(m):
    g = gen_grid_diag(m, 2)
    assert max_mono_component(g, layer_coloring(2, m)).max_component_size == m


def test_layer_coloring_3d():
    g = gen_grid_diag(3, 3)
    assert max_mono_component(g, layer_coloring(3, 3)).max_component_size == 9


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_hamming_coloring_value(d):
    lg, _ = line_graph(gen_hamming_cube(d))
    r = max_mono_component(lg, hamming_cube_edge_coloring(d))
    assert r.max_component_size == Fraction(d, 4) * 2 ** (d // 2)


def test_hamming_coloring_rejects_odd():
    with pytest.raises(ValueError):
        hamming_cube_edge_coloring(3)
