import warnings

import numpy as np
import pytest

from nvdlap import METHODS, build_graph, effective_resistance, ge_distance, ge_distance_exact, polarization_score
from nvdlap.dataio import GroupLabels
from nvdlap.generators import gen_ba, gen_er
from nvdlap.metrics import group_vectors
from nvdlap.oracle import _clamped_sqrt


@pytest.mark.parametrize("method", METHODS)
def test_two_node_path(path2, method):
    d, rep = ge_distance(path2, [1, 0], [0, 1], method)
    assert d == pytest.approx(1.0, abs=1e-8)
    assert rep.converged


@pytest.mark.parametrize("method", METHODS)
def test_equal_vectors(k3, method):
    d, _ = ge_distance(k3, [0.3, 2.0, -1.0], [0.3, 2.0, -1.0], method)
    assert d == 0.0


@pytest.mark.parametrize("method", METHODS)
def test_k3_indicators(k3, method):
    assert ge_distance(k3, [1, 0, 0], [0, 0, 1], method)[0] == pytest.approx(np.sqrt(2 / 3), abs=1e-8)


def test_length_mismatch(k3):
    with pytest.raises(ValueError):
        ge_distance(k3, [1, 0], [0, 0, 1])


@pytest.mark.parametrize("method", METHODS)
def test_resistance_examples(path3, k3, method):
    assert effective_resistance(path3, 0, 2, method) == pytest.approx(2.0, abs=1e-9)
    assert effective_resistance(k3, 0, 1, method) == pytest.approx(2 / 3, abs=1e-9)
    assert effective_resistance(k3, 1, 1, method) == 0.0


def test_resistance_errors():
    g = build_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError, match="different components"):
        effective_resistance(g, 0, 3)
    with pytest.raises(IndexError):
        effective_resistance(g, 0, 4)


def test_resistance_weighted_series():
    g = build_graph(3, [(0, 1, 2.0), (1, 2, 4.0)])
    assert effective_resistance(g, 0, 2) == pytest.approx(0.75, abs=1e-12)


@pytest.mark.parametrize("method", METHODS)
def test_polarization_two_node(path2, method):
    assert polarization_score(path2, np.array([0, 1]), method) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("method", METHODS)
def test_polarization_barbell(barbell, method):
    labels = np.array([0] * 5 + [1] * 5)
    a, b = labels == 0, labels == 1
    ref = ge_distance_exact(barbell, a / 5.0, b / 5.0)
    assert polarization_score(barbell, labels, method) == pytest.approx(ref, abs=1e-8)
    # the bridge carries all cross flow: (1/5)^2 * (ea - eb) resistances collapse to ~1
    assert 1.0 < ref < 1.5


def test_polarization_unlabeled_nodes_excluded(barbell):
    labels = np.array([0] * 5 + [1] * 5)
    partial = labels.copy()
    partial[[0, 9]] = -1
    a, b = (partial == 0) / 4.0, (partial == 1) / 4.0
    assert polarization_score(barbell, partial, "cg") == pytest.approx(
        ge_distance_exact(barbell, a, b), abs=1e-8)


def test_polarization_unnormalized(barbell):
    labels = np.array([0] * 5 + [1] * 5)
    raw = polarization_score(barbell, labels, "cg", normalize=False)
    assert raw == pytest.approx(5 * polarization_score(barbell, labels, "cg"), rel=1e-8)


def test_polarization_needs_two_classes(k3):
    with pytest.raises(ValueError, match="two"):
        polarization_score(k3, np.array([0, 0, -1]))
    with pytest.raises(ValueError):
        group_vectors(np.array([0, 1, 2]), 3)


def test_polarization_accepts_group_labels(barbell):
    labels = GroupLabels(np.array([0] * 5 + [1] * 5), ("D", "R"))
    assert polarization_score(barbell, labels) == pytest.approx(
        polarization_score(barbell, labels.labels), abs=1e-9)


def test_clamp_warns_only_on_large_negative():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert _clamped_sqrt(-1e-15, 1.0) == 0.0
    with pytest.warns(RuntimeWarning):
        assert _clamped_sqrt(-1e-6, 1.0) == 0.0


@pytest.mark.parametrize("method", METHODS)
def test_scale_and_translation(method):
    g = gen_ba(80, 2, 3)
    rng = np.random.default_rng(1)
    a, b = rng.random(80), rng.random(80)
    d = ge_distance(g, a, b, method)[0]
    for lam in (-3.0, 0.5, 1e3):
        assert ge_distance(g, lam * a, lam * b, method)[0] == pytest.approx(abs(lam) * d, rel=1e-9)
    assert ge_distance(g, a + 7.0, b, method)[0] == pytest.approx(d, rel=1e-9)
    assert ge_distance(g, a + 2.0, b - 1.0, method)[0] == pytest.approx(d, rel=1e-9)


def test_translation_per_component():
    g = build_graph(6, [(0, 1), (1, 2), (3, 4), (4, 5, 2.0)])
    rng = np.random.default_rng(2)
    a, b = rng.random(6), rng.random(6)
    shift = np.array([1.0, 1.0, 1.0, -4.0, -4.0, -4.0])
    for method in METHODS:
        d = ge_distance(g, a, b, method)[0]
        assert ge_distance(g, a + shift, b, method)[0] == pytest.approx(d, rel=1e-9)


@pytest.mark.parametrize("method", METHODS)
def test_solver_matches_baseline(method):
    for seed in range(3):
        g = gen_er(300, 1500, seed)
        rng = np.random.default_rng(seed)
        a, b = rng.random(300), rng.random(300)
        assert abs(ge_distance(g, a, b, method)[0] - ge_distance_exact(g, a, b)) <= 1e-6
