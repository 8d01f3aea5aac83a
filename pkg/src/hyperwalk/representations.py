"""Matrix representations derived from hypergraph random walks.

Every builder taking ``(P, pi)`` expects a converged walk, e.g. the fields
of a :class:`~hyperwalk.walk.WalkState`. Outputs are CSR arrays; symmetric
outputs are exactly symmetrized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .exceptions import HypergraphError
from .walk import _require_connected, _walk_matrix, random_walk

KINDS = ("T", "L", "normlap", "gamma", "delta", "crwc", "chungA", "skew", "bauer")


def _diag(v):
    return sp.diags_array(np.asarray(v, dtype=float), format="csr")


def _checked_pi(pi):
    pi = np.asarray(pi, dtype=float)
    if not np.all(pi > 0):
        bad = np.flatnonzero(~(pi > 0))
        raise ValueError(
            f"stationary distribution has nonpositive entries at {bad[:10].tolist()}; "
            "the walk has not converged"
        )
    return pi


def _sym(M):
    return ((M + M.T) / 2).tocsr()


def chung_adjacency(P, pi):
    """Undirected edge weighting ``(Phi P + P^T Phi) / 2`` of the clique expansion.

    Its weighted degrees equal ``pi``, so its graph Laplacians coincide with
    the directed Laplacians of the walk.
    """
    F = _diag(pi) @ sp.csr_array(P)
    return _sym(F)


def combinatorial_laplacian(P, pi):
    """Directed combinatorial Laplacian ``Phi - (Phi P + P^T Phi) / 2``."""
    return (_diag(pi) - chung_adjacency(P, pi)).tocsr()


def normalized_laplacian(P, pi):
    """``Phi^-1/2 L Phi^-1/2``; eigenvalues lie in [0, 2]."""
    s = _diag(1.0 / np.sqrt(_checked_pi(pi)))
    return _sym(s @ combinatorial_laplacian(P, pi) @ s)


def core_matrix(P, pi):
    """``T = (Phi^1/2 P Phi^-1/2 + Phi^-1/2 P^T Phi^1/2) / 2``.

    Nonnegative and symmetric with top eigenpair ``(1, sqrt(pi))``;
    equals ``I`` minus the normalized Laplacian.
    """
    root = np.sqrt(_checked_pi(pi))
    M = _diag(root) @ sp.csr_array(P) @ _diag(1.0 / root)
    return _sym(M)


def li_zhang_gamma(P, pi):
    """Asymmetric Laplacian ``Phi^1/2 (I - P) Phi^-1/2``."""
    root = np.sqrt(_checked_pi(pi))
    n = len(root)
    G = _diag(root) @ (sp.eye_array(n, format="csr") - sp.csr_array(P)) @ _diag(1.0 / root)
    return G.tocsr()


def _zhou_parts(H):
    X = H.pattern
    omega = np.asarray(H.omega)
    d_edge = np.asarray(X.sum(axis=1)).ravel()
    # vertex degree from the vertex's incidence column
    d_vertex = X.T @ omega
    return X, omega, d_edge, d_vertex


def zhou_delta(H):
    """Zhou's clique-expansion operator ``D_V^-1/2 X^T Z D_E^-1 X D_V^-1/2``.

    This is adjacency-like: its eigenvalues lie in [0, 1] and clustering
    uses its leading eigenvectors.
    """
    H.check()
    X, omega, d_edge, d_vertex = _zhou_parts(H)
    s = _diag(1.0 / np.sqrt(d_vertex))
    D = s @ X.T @ _diag(omega / d_edge) @ X @ s
    return _sym(D)


def crwc_transition(H):
    """Transition matrix of the simple (uniform within edge) random walk."""
    _require_connected(H)
    X = H.pattern
    return _walk_matrix(X, X, np.asarray(H.omega))


def cucuringu_skew(P):
    """Skew part ``P - P^T`` of the Hermitian matrix ``i (P - P^T)``.

    Returns ``(B, s)`` where ``s[i] = sum_j |B[i, j]|`` is the diagonal of the
    normalizer; rows of ``B`` that are entirely zero get ``s[i] = 1``.
    """
    P = sp.csr_array(P)
    B = (P - P.T).tocsr()
    B.eliminate_zeros()
    s = np.asarray(abs(B).sum(axis=1)).ravel()
    s[s == 0] = 1.0
    return B, s


def hermitian_embedding(B):
    """Real symmetric ``2n x 2n`` embedding ``[[0, -B], [B, 0]]`` of ``i B``."""
    B = sp.csr_array(B)
    return sp.block_array([[None, -B], [B, None]], format="csr")


@dataclass(frozen=True, eq=False)
class Representation:
    kind: str
    matrix: sp.csr_array
    normalizer: np.ndarray | None = None


def representation(kind, H, walk=None):
    """Build representation ``kind`` (one of :data:`KINDS`) of ``H``.

    A precomputed ``walk`` avoids recomputing the stationary distribution.
    """
    if kind not in KINDS:
        raise HypergraphError(f"unknown representation {kind!r}; choose from {KINDS}")
    if kind == "delta":
        return Representation(kind, zhou_delta(H))
    if kind == "crwc":
        return Representation(kind, crwc_transition(H))
    if walk is None:
        walk = random_walk(H)
    P, pi = walk.P, walk.pi
    if kind == "skew":
        B, s = cucuringu_skew(P)
        return Representation(kind, B, s)
    if kind == "bauer":
        return Representation(kind, walk.bauer_laplacian)
    builder = {
        "T": core_matrix,
        "L": combinatorial_laplacian,
        "normlap": normalized_laplacian,
        "gamma": li_zhang_gamma,
        "chungA": chung_adjacency,
    }[kind]
    return Representation(kind, builder(P, pi))
