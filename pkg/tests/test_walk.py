from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import dense, random_hypergraph
from hyperwalk.exceptions import DisconnectedHypergraphError, NonConvergenceError
from hyperwalk.hypergraph import Hypergraph
from hyperwalk.walk import (
    WalkState,
    detailed_balance_residual,
    has_edvw,
    random_walk,
    stationary_distribution,
    transition_matrix,
)


def transition_oracle(H):
    """Exact rational P[i, j] = sum_e w(e)/d(i) * gamma_e(j)/delta(e), by loops."""
    R = dense(H.R)
    m, n = R.shape
    R = [[Fraction(float(x)) for x in row] for row in R]
    w = [Fraction(float(x)) for x in H.omega]
    d = [sum(w[e] for e in range(m) if R[e][i] > 0) for i in range(n)]
    delta = [sum(R[e]) for e in range(m)]
    P = [[sum((w[e] / d[i]) * (R[e][j] / delta[e]) for e in range(m) if R[e][i] > 0)
          for j in range(n)] for i in range(n)]
    return P


def stationary_oracle(P):
    """Solve pi^T (P - I) = 0 with sum(pi) = 1 by least squares."""
    P = dense(P)
    n = P.shape[0]
    A = np.vstack([(P - np.eye(n)).T, np.ones(n)])
    b = np.zeros(n + 1)
    b[-1] = 1
    return np.linalg.lstsq(A, b, rcond=None)[0]


def test_ex2_transition_exact(EX2):
    expected = [[Fraction(1, 3), Fraction(2, 3), 0],
                [Fraction(1, 6), Fraction(7, 12), Fraction(1, 4)],
                [0, Fraction(1, 2), Fraction(1, 2)]]
    assert transition_oracle(EX2) == expected
    np.testing.assert_allclose(dense(transition_matrix(EX2)), np.array(expected, float), atol=1e-12)


def test_ex1_transition_rows(EX1):
    P = dense(transition_matrix(EX1))
    np.testing.assert_allclose(P[0], [3 / 8, 1 / 2, 1 / 8], atol=1e-14)
    np.testing.assert_allclose(P[1], [3 / 8, 1 / 2, 1 / 8], atol=1e-14)
    np.testing.assert_allclose(P[2], [1 / 4, 1 / 2, 1 / 4], atol=1e-14)


def test_single_edge_walk_is_uniform():
    P = dense(transition_matrix(Hypergraph(np.ones((1, 2)))))
    np.testing.assert_allclose(P, 0.5)


def test_stationary_fixtures(EX1, EX2):
    w1, w2 = random_walk(EX1), random_walk(EX2)
    np.testing.assert_allclose(w1.pi, np.array([5, 7, 2]) / 14, atol=1e-12)
    np.testing.assert_allclose(w2.pi, np.array([1, 4, 2]) / 7, atol=1e-12)
    np.testing.assert_allclose(w2.pi, stationary_oracle(w2.P), atol=1e-9)
    assert w2.residual <= 1e-13


def test_detailed_balance_fixtures(EX1, EX2):
    w1, w2 = random_walk(EX1), random_walk(EX2)
    assert detailed_balance_residual(w1.P, w1.pi) == pytest.approx(1 / 112, abs=1e-12)
    assert detailed_balance_residual(w2.P, w2.pi) <= 1e-12


def test_edvw_detection(EX1):
    assert has_edvw(EX1)
    assert not has_edvw(Hypergraph(EX1.pattern))
    # vertex weights that depend only on the vertex are not edge-dependent
    assert not has_edvw(Hypergraph(np.array([[2.0, 3.0, 1.0], [2.0, 3.0, 0.0]])))


def test_disconnected_rejected():
    H = Hypergraph.from_edges([[0, 1], [2, 3]])
    with pytest.raises(DisconnectedHypergraphError):
        transition_matrix(H)


def test_nonconvergence_raised(EX1):
    with pytest.raises(NonConvergenceError) as err:
        stationary_distribution(transition_matrix(EX1), tol=1e-30, max_iter=5)
    assert err.value.iterations == 5


def test_bauer_laplacian(EX2):
    w = random_walk(EX2)
    np.testing.assert_allclose(dense(w.bauer_laplacian), np.eye(3) - dense(w.P))
    assert WalkState.from_matrix(w.P).n == 3


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_walk_properties_on_random_hypergraphs(seed):
    H = random_hypergraph(np.random.default_rng(seed), n_max=25)
    w = random_walk(H)
    P = dense(w.P)
    assert np.all(P >= 0)
    np.testing.assert_allclose(P.sum(1), 1.0, atol=1e-12)
    assert np.all(w.pi > 0)
    assert w.pi.sum() == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(w.pi, stationary_oracle(P), atol=1e-9)
    np.testing.assert_allclose(P, np.array(transition_oracle(H), float), atol=1e-12)
