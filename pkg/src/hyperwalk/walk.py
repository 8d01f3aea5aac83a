"""EDVW random walks: transition matrix, stationary distribution, reversibility."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .exceptions import DisconnectedHypergraphError, NonConvergenceError
from .hypergraph import is_connected


def _require_connected(H):
    H.check()
    if not is_connected(H):
        raise DisconnectedHypergraphError(
            "hypergraph is disconnected; take largest_component() first"
        )


def _walk_matrix(X, R, omega):
    """``D_V^-1 W D_E^-1 R`` with ``W = X^T diag(omega)``."""
    d_vertex = X.T @ omega
    d_edge = np.asarray(R.sum(axis=1)).ravel()
    left = sp.diags_array(1.0 / d_vertex) @ X.T @ sp.diags_array(omega / d_edge)
    P = (left @ R).tocsr()
    P.sort_indices()
    return P


def transition_matrix(H):
    """Row-stochastic transition matrix of the EDVW random walk on ``H``.

    From vertex ``u`` the walk picks an incident edge with probability
    proportional to its weight, then a vertex of that edge with probability
    proportional to its edge-dependent weight. ``H`` must be connected.
    """
    _require_connected(H)
    return _walk_matrix(H.pattern, H.R, np.asarray(H.omega))


def stationary_distribution(P, tol=1e-13, max_iter=100_000):
    """Stationary distribution of an irreducible aperiodic chain by power iteration.

    Returns ``(pi, residual, iterations)`` where ``residual`` is
    ``||pi^T P - pi^T||_1``. Raises :class:`NonConvergenceError` carrying the
    last residual when ``max_iter`` is exhausted.
    """
    PT = P.T.tocsr() if sp.issparse(P) else np.asarray(P).T
    n = PT.shape[0]
    pi = np.full(n, 1.0 / n)
    residual = np.inf
    for it in range(max_iter + 1):
        nxt = PT @ pi
        residual = float(np.abs(nxt - pi).sum())
        if residual <= tol:
            if not np.all(pi > 0):
                raise NonConvergenceError(
                    "stationary distribution has nonpositive entries; "
                    "is the chain irreducible?",
                    residual=residual,
                    iterations=it,
                )
            return pi, residual, it
        pi = nxt / nxt.sum()
    raise NonConvergenceError(
        f"power iteration did not reach tol={tol:g} in {max_iter} iterations "
        f"(residual {residual:.3e})",
        residual=residual,
        iterations=max_iter,
    )


def detailed_balance_residual(P, pi):
    """``max_ij |pi_i P_ij - pi_j P_ji|``; zero exactly for reversible chains."""
    F = sp.diags_array(np.asarray(pi, float)) @ sp.csr_array(P)
    D = (F - F.T).tocsr()
    return float(np.abs(D.data).max()) if D.nnz else 0.0


def has_edvw(H):
    """True when some vertex carries different weights in different edges."""
    Rc = H.R.tocsc()
    for v in range(H.n_vertices):
        col = Rc.data[Rc.indptr[v]:Rc.indptr[v + 1]]
        if col.size > 1 and np.any(col != col[0]):
            return True
    return False


@dataclass(frozen=True, eq=False)
class WalkState:
    """Transition matrix with its stationary distribution and convergence info."""

    P: sp.csr_array
    pi: np.ndarray
    residual: float
    iterations: int

    @classmethod
    def from_matrix(cls, P, tol=1e-13, max_iter=100_000):
        P = sp.csr_array(P)
        pi, residual, iterations = stationary_distribution(P, tol, max_iter)
        pi.flags.writeable = False
        return cls(P, pi, residual, iterations)

    @property
    def n(self):
        return self.P.shape[0]

    @property
    def bauer_laplacian(self):
        """The random-walk Laplacian ``I - P``."""
        return (sp.eye_array(self.n, format="csr") - self.P).tocsr()


def random_walk(H, tol=1e-13, max_iter=100_000):
    """Build the :class:`WalkState` of the EDVW walk on ``H``."""
    return WalkState.from_matrix(transition_matrix(H), tol, max_iter)
