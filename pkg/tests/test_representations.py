import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import dense, random_hypergraph
from hyperwalk.hypergraph import Hypergraph, clique_adjacency
from hyperwalk.representations import (
    KINDS,
    chung_adjacency,
    combinatorial_laplacian,
    core_matrix,
    crwc_transition,
    cucuringu_skew,
    hermitian_embedding,
    li_zhang_gamma,
    normalized_laplacian,
    representation,
    zhou_delta,
)
from hyperwalk.walk import random_walk, transition_matrix


def parts(H):
    w = random_walk(H)
    return w.P, w.pi


def test_ex2_hand_values(EX2):
    P, pi = parts(EX2)
    assert dense(chung_adjacency(P, pi))[0, 1] == pytest.approx(2 / 21, abs=1e-12)
    assert dense(combinatorial_laplacian(P, pi))[0, 0] == pytest.approx(2 / 21, abs=1e-12)
    assert dense(core_matrix(P, pi))[0, 1] == pytest.approx(1 / 3, abs=1e-12)


def test_ex1_chung_row_sums(EX1):
    P, pi = parts(EX1)
    np.testing.assert_allclose(dense(chung_adjacency(P, pi)).sum(1), [5 / 14, 1 / 2, 1 / 7], atol=1e-12)


def test_two_vertex_normalized_laplacian():
    P, pi = parts(Hypergraph(np.ones((1, 2))))
    np.testing.assert_allclose(dense(normalized_laplacian(P, pi)), [[0.5, -0.5], [-0.5, 0.5]], atol=1e-14)


def test_symmetric_walk_identities():
    # a uniform 3-cycle of 2-edges gives a symmetric P with uniform pi
    H = Hypergraph.from_edges([[0, 1], [1, 2], [0, 2]])
    P, pi = parts(H)
    np.testing.assert_allclose(dense(chung_adjacency(P, pi)), dense(P) / 3, atol=1e-14)
    np.testing.assert_allclose(dense(core_matrix(P, pi)), dense(P), atol=1e-14)
    np.testing.assert_allclose(dense(li_zhang_gamma(P, pi)), np.eye(3) - dense(P), atol=1e-14)
    B, s = cucuringu_skew(P)
    assert B.nnz == 0
    np.testing.assert_array_equal(s, 1.0)


def test_normalized_laplacian_rejects_nonpositive_pi(EX2):
    P, _ = parts(EX2)
    with pytest.raises(ValueError):
        normalized_laplacian(P, np.array([0.5, 0.5, 0.0]))


def test_zhou_delta_fixtures(EX1):
    D = dense(zhou_delta(Hypergraph(np.ones((1, 2)))))
    np.testing.assert_allclose(D, 0.5)
    # vertex 2 lies only in the 3-vertex edge: 1/|e| = 1/3 with D_E = diag(X e)
    assert dense(zhou_delta(EX1))[2, 2] == pytest.approx(1 / 3, abs=1e-14)


def test_crwc_fixtures(EX1):
    np.testing.assert_allclose(dense(crwc_transition(EX1))[2], [1 / 3, 1 / 3, 1 / 3], atol=1e-14)
    np.testing.assert_allclose(dense(crwc_transition(Hypergraph(np.ones((1, 2))))), 0.5)


def test_cucuringu_ex1(EX1):
    P, _ = parts(EX1)
    B, s = cucuringu_skew(P)
    B = dense(B)
    assert B[0, 2] == pytest.approx(-1 / 8, abs=1e-14)
    np.testing.assert_allclose(s, np.abs(B).sum(1), atol=1e-14)
    E = dense(hermitian_embedding(B))
    np.testing.assert_allclose(E, E.T, atol=1e-14)
    # the embedding's spectrum is the Hermitian matrix i*B's spectrum, doubled
    herm = np.linalg.eigvalsh(1j * B)
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(E)), np.sort(np.repeat(herm, 2)), atol=1e-12)


def test_representation_factory(EX1):
    w = random_walk(EX1)
    for kind in KINDS:
        rep = representation(kind, EX1, w)
        assert rep.matrix.shape == (3, 3)
    np.testing.assert_allclose(dense(representation("T", EX1).matrix), dense(core_matrix(w.P, w.pi)))
    with pytest.raises(ValueError):
        representation("nope", EX1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_representation_invariants(seed):
    H = random_hypergraph(np.random.default_rng(seed), n_max=30)
    P, pi = parts(H)
    n = H.n_vertices
    A = dense(chung_adjacency(P, pi))
    L = dense(combinatorial_laplacian(P, pi))
    NL = dense(normalized_laplacian(P, pi))
    T = dense(core_matrix(P, pi))
    G = dense(li_zhang_gamma(P, pi))
    Dz = dense(zhou_delta(H))
    for M in (A, L, NL, T, Dz):
        np.testing.assert_allclose(M, M.T, atol=1e-12)
    assert A.min() >= 0 and T.min() >= 0 and Dz.min() >= 0
    np.testing.assert_allclose(A.sum(1), pi, atol=1e-10)
    np.testing.assert_allclose(L.sum(1), 0, atol=1e-10)
    np.testing.assert_allclose(NL @ np.sqrt(pi), 0, atol=1e-8)
    np.testing.assert_allclose(T + NL, np.eye(n), atol=1e-12)
    np.testing.assert_allclose((G + G.T) / 2, NL, atol=1e-12)
    np.testing.assert_allclose(np.diag(G), 1 - np.diag(dense(P)), atol=1e-12)
    s = 1 / np.sqrt(pi)
    np.testing.assert_allclose(T, s[:, None] * A * s[None, :], atol=1e-12)
    # pattern of A lies inside the clique expansion
    assert np.all((A > 0) <= (dense(clique_adjacency(H)) > 0))
    # spectra, via an independent dense solver
    assert np.linalg.eigvalsh(L).min() >= -1e-10
    assert np.linalg.matrix_rank(L, tol=1e-10 * np.abs(L).max()) == n - 1
    t = np.linalg.eigvalsh(T)
    assert t.max() == pytest.approx(1.0, abs=1e-10)
    d = np.asarray(dense(H.pattern).T @ H.omega)
    np.testing.assert_allclose(Dz @ np.sqrt(d), np.sqrt(d), atol=1e-10)
    B, _ = cucuringu_skew(P)
    np.testing.assert_allclose(dense(B), -dense(B).T, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_crwc_equals_unit_weight_walk(seed):
    H = random_hypergraph(np.random.default_rng(seed), n_max=30)
    unit = Hypergraph(H.pattern, H.omega)
    np.testing.assert_allclose(dense(crwc_transition(H)), dense(transition_matrix(unit)), atol=1e-14)
