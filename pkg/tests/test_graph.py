import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nvdlap import build_graph, connected_components, laplacian_apply, weighted_degrees
from nvdlap.graph import from_arrays

from conftest import dense_laplacian


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    edges = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1),
                  st.integers(1, 5).map(float)),
        max_size=3 * n))
    return n, edges


def test_single_edge(path2):
    assert path2.m == 1
    np.testing.assert_array_equal(weighted_degrees(path2), [1.0, 1.0])


def test_duplicate_edges_merge():
    g = build_graph(3, [(0, 1, 1), (1, 0, 1)])
    assert g.m == 1
    u, v, w = g.edges()
    assert (u[0], v[0], w[0]) == (0, 1, 2.0)


def test_out_of_range_edge_is_reported():
    with pytest.raises(ValueError, match=r"\(0, 3, 1\)"):
        build_graph(3, [(0, 3, 1)])


def test_self_loops_dropped():
    g = build_graph(2, [(0, 0, 4.0), (0, 1, 1.0)])
    assert g.m == 1
    np.testing.assert_array_equal(g.degrees, [1.0, 1.0])


@pytest.mark.parametrize("w", [0.0, -1.0, np.inf])
def test_bad_weights_rejected(w):
    with pytest.raises(ValueError):
        build_graph(2, [(0, 1, w)])


def test_arrays_are_read_only(k3):
    with pytest.raises(ValueError):
        k3.weights[0] = 5.0


def test_laplacian_two_node_path(path2):
    np.testing.assert_array_equal(laplacian_apply(path2, [1.0, 0.0]), [1.0, -1.0])


def test_laplacian_k3_against_dense(k3):
    x = np.array([1.0, -1.0, 0.0])
    expected = dense_laplacian(k3) @ x
    np.testing.assert_allclose(expected, [3.0, -3.0, 0.0])
    np.testing.assert_allclose(laplacian_apply(k3, x), expected)


def test_laplacian_rejects_wrong_length(k3):
    with pytest.raises(ValueError):
        laplacian_apply(k3, np.ones(4))


def test_degrees_star():
    g = build_graph(5, [(0, i, 1.0) for i in range(1, 5)])
    np.testing.assert_array_equal(weighted_degrees(g), [4, 1, 1, 1, 1])


def test_degrees_k3(k3):
    np.testing.assert_array_equal(weighted_degrees(k3), [2, 2, 2])


def test_isolated_trailing_nodes_have_zero_degree():
    g = build_graph(4, [(0, 1, 2.0)])
    np.testing.assert_array_equal(g.degrees, [2, 2, 0, 0])


def test_components_examples(k3):
    assert connected_components(k3).count == 1
    cc = connected_components(build_graph(4, [(0, 1, 1), (2, 3, 1)]))
    assert cc.count == 2
    np.testing.assert_array_equal(cc.sizes, [2, 2])
    assert connected_components(build_graph(3, [])).count == 3


def test_component_ids_follow_smallest_node():
    cc = connected_components(build_graph(6, [(5, 4, 1), (1, 3, 1), (0, 2, 1)]))
    np.testing.assert_array_equal(cc.label, [0, 1, 0, 1, 2, 2])


@settings(max_examples=60, deadline=None)
@given(graphs(), st.integers(0, 2**32 - 1))
def test_laplacian_properties(spec, seed):
    n, edges = spec
    g = build_graph(n, edges)
    rng = np.random.default_rng(seed)
    x, y = rng.standard_normal(n), rng.standard_normal(n)
    lx = laplacian_apply(g, x)
    np.testing.assert_allclose(lx, dense_laplacian(g) @ x, atol=1e-12)
    u, v, w = g.edges()
    quad = float(np.sum(w * (x[u] - x[v]) ** 2))
    assert x @ lx == pytest.approx(quad, abs=1e-9)
    assert x @ lx >= -1e-12
    scale = 1.0 + np.abs(lx).max()
    np.testing.assert_allclose(laplacian_apply(g, 2.0 * x - 3.0 * y),
                               2.0 * lx - 3.0 * laplacian_apply(g, y), atol=1e-12 * scale * 10)
    assert y @ lx == pytest.approx(x @ laplacian_apply(g, y), abs=1e-9)
    np.testing.assert_allclose(laplacian_apply(g, np.ones(n)), 0.0, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_build_is_order_insensitive(spec, rnd):
    n, edges = spec
    shuffled = list(edges)
    rnd.shuffle(shuffled)
    flipped = [(v, u, w) for u, v, w in shuffled]
    assert build_graph(n, edges) == build_graph(n, flipped)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_invariants_hold(spec):
    n, edges = spec
    g = build_graph(n, edges)
    assert np.all(np.diff(g.offsets) >= 0)
    assert g.offsets[-1] == 2 * g.m
    adj = {}
    for u in range(n):
        nbrs = g.neighbors[g.offsets[u]:g.offsets[u + 1]]
        assert np.all(np.diff(nbrs) > 0)
        assert u not in nbrs
        for v, w in zip(nbrs, g.weights[g.offsets[u]:g.offsets[u + 1]]):
            adj[(u, int(v))] = w
    assert all(adj[(v, u)] == w for (u, v), w in adj.items())
    assert np.all(g.weights > 0)
    cc = g.components
    u, v, _ = g.edges()
    assert np.all(cc.label[u] == cc.label[v])
    assert cc.sizes.sum() == n


def test_weight_merge_independent_of_order():
    w = [0.1, 0.2, 0.3, 1e-17]
    a = from_arrays(2, [0] * 4, [1] * 4, w)
    b = from_arrays(2, [1] * 4, [0] * 4, w[::-1])
    assert a == b
