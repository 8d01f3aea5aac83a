import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sklearn.metrics import normalized_mutual_info_score

from conftest import dense, random_hypergraph
from hyperwalk.metrics import (
    agreement,
    av_conductance,
    av_ncut,
    contingency,
    directed_ncut,
    matched_f1,
    matched_jaccard,
    nmi,
)
from hyperwalk.representations import chung_adjacency
from hyperwalk.walk import random_walk

K4 = np.ones((4, 4)) - np.eye(4)


def test_nmi_fixtures():
    assert nmi([0, 0, 1, 1], [1, 1, 0, 0]) == pytest.approx(1.0, abs=1e-12)
    assert nmi([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(0.0, abs=1e-12)
    # contingency [[2, 0], [1, 1]], entropies by hand
    n = 4
    hx = np.log(2)
    hy = -(3 / 4 * np.log(3 / 4) + 1 / 4 * np.log(1 / 4))
    mi = 2 / n * np.log((2 / n) / (2 / 4 * 3 / 4)) + 1 / n * np.log((1 / n) / (2 / 4 * 3 / 4)) \
        + 1 / n * np.log((1 / n) / (2 / 4 * 1 / 4))
    np.testing.assert_array_equal(contingency([0, 0, 1, 1], [0, 0, 0, 1]), [[2, 0], [1, 1]])
    assert nmi([0, 0, 1, 1], [0, 0, 0, 1]) == pytest.approx(2 * mi / (hx + hy), abs=1e-12)


def test_nmi_degenerate():
    assert nmi([0, 0, 0], [1, 1, 1]) == 1.0
    assert nmi([0, 0, 0], [0, 1, 2]) == 0.0
    with pytest.raises(ValueError):
        nmi([0, 1], [0, 1, 2])


def test_matched_fixtures():
    f1, matching = matched_f1([0, 0, 1, 1], [0, 1, 1, 1])
    assert f1 == pytest.approx(11 / 15, abs=1e-12)
    assert matching == {0: 0, 1: 1}
    jac, _ = matched_jaccard([0, 0, 1, 1], [0, 1, 1, 1])
    assert jac == pytest.approx(7 / 12, abs=1e-12)
    assert matched_f1([3, 3, 5], [3, 3, 5])[0] == 1.0
    assert matched_jaccard([0, 1, 0, 1], [1, 1, 0, 0])[0] < 1


def test_matched_padding_divides_by_larger_count():
    # perfect match of two clusters, third predicted cluster unmatched
    f1, _ = matched_f1([0, 0, 1, 1, 2], [0, 0, 1, 1, 1])
    expected = (1.0 + 2 * 2 / (2 + 3) + 0.0) / 3
    assert f1 == pytest.approx(expected, abs=1e-12)


def test_agreement_bundle():
    s = agreement([1, 1, 0, 0], [0, 0, 1, 1])
    assert s.as_dict() == {"nmi": pytest.approx(1.0), "avg_f1": 1.0, "jaccard": 1.0}


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_scores_match_oracle_and_are_permutation_invariant(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 40))
    x = rng.integers(0, int(rng.integers(1, 6)), n)
    y = rng.integers(0, int(rng.integers(1, 6)), n)
    if np.unique(x).size > 1 or np.unique(y).size > 1:
        ref = normalized_mutual_info_score(x, y, average_method="arithmetic")
        assert nmi(x, y) == pytest.approx(ref, abs=1e-10)
    relabel = rng.permutation(10)
    order = rng.permutation(n)
    for f in (nmi, lambda a, b: matched_f1(a, b)[0], lambda a, b: matched_jaccard(a, b)[0]):
        v = f(x, y)
        assert 0.0 <= v <= 1.0 + 1e-12
        assert f(relabel[x], y) == pytest.approx(v, abs=1e-12)
        assert f(x[order], y[order]) == pytest.approx(v, abs=1e-12)
        assert f(y, x) == pytest.approx(v, abs=1e-12)


def test_cut_fixtures():
    labels = np.array([0, 0, 1, 1])
    assert av_ncut(K4, labels) == pytest.approx(1 / 3, abs=1e-12)
    assert av_conductance(K4, labels) == pytest.approx(1 / 3, abs=1e-12)
    assert av_ncut(K4, np.zeros(4, int)) == 0.0
    assert av_conductance(K4, np.zeros(4, int)) == 0.0
    two = np.zeros((6, 6))
    two[:3, :3] = 1 - np.eye(3)
    two[3:, 3:] = 1 - np.eye(3)
    comps = np.repeat([0, 1], 3)
    assert av_ncut(two, comps) == 0.0 and av_conductance(two, comps) == 0.0


def test_zero_volume_cluster_is_named():
    A = np.zeros((3, 3))
    A[0, 1] = A[1, 0] = 1
    with pytest.raises(ValueError, match="cluster 7"):
        av_ncut(A, [0, 0, 7])


def test_directed_ncut_two_state_chain():
    p = 0.3
    P = np.array([[1 - p, p], [p, 1 - p]])
    assert directed_ncut(P, [0.5, 0.5], [0, 1], average=False) == pytest.approx(p, abs=1e-14)
    assert directed_ncut(P, [0.5, 0.5], [0, 0]) == 0.0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_directed_ncut_equals_undirected_on_chung_adjacency(seed):
    rng = np.random.default_rng(seed)
    H = random_hypergraph(rng, n_max=30)
    w = random_walk(H)
    k = int(rng.integers(1, min(5, H.n_vertices) + 1))
    labels = rng.permutation(np.arange(H.n_vertices) % k)
    A = dense(chung_adjacency(w.P, w.pi))
    assert directed_ncut(w.P, w.pi, labels) == pytest.approx(av_ncut(A, labels), abs=1e-10)
