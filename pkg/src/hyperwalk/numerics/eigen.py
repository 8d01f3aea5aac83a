"""Symmetric eigendecomposition and truncated SVD."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh, svds

#: Above this dimension the iterative (Lanczos) paths are used.
DENSE_EIG_LIMIT = 2048


@dataclass(frozen=True)
class EigResult:
    values: np.ndarray  # descending
    vectors: np.ndarray  # orthonormal columns


def _signs(V):
    # largest-magnitude entry of each column made positive, for reproducibility
    idx = np.argmax(np.abs(V), axis=0)
    signs = np.sign(V[idx, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return signs


def _fix_signs(V):
    return V * _signs(V)


def _asymmetry(S):
    D = S - S.T
    if sp.issparse(D):
        return float(np.abs(D.data).max()) if D.nnz else 0.0
    return float(np.abs(D).max()) if D.size else 0.0


def symmetric_eigs(S, k, seed=0, tol=0.0, dense_limit=DENSE_EIG_LIMIT):
    """Top-``k`` (largest algebraic) eigenpairs of a symmetric matrix.

    Uses LAPACK's dense symmetric solver up to ``dense_limit`` rows and
    ARPACK's restarted Lanczos with a seeded start vector above it.
    """
    n = S.shape[0]
    if S.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {S.shape}")
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for a {n}x{n} matrix")
    if _asymmetry(S) > 1e-10:
        raise ValueError("matrix is not symmetric within 1e-10")
    if n <= dense_limit or k >= n - 1:
        dense = S.toarray() if sp.issparse(S) else np.asarray(S, dtype=float)
        dense = (dense + dense.T) / 2
        w, V = np.linalg.eigh(dense)
        w, V = w[::-1][:k], V[:, ::-1][:, :k]
    else:
        v0 = np.random.default_rng(seed).uniform(-1, 1, n)
        w, V = eigsh(sp.csr_array(S), k=k, which="LA", v0=v0, tol=tol)
        order = np.argsort(w)[::-1]
        w, V = w[order], V[:, order]
    return EigResult(np.ascontiguousarray(w), _fix_signs(np.ascontiguousarray(V)))


def truncated_svd(M, k, seed=0, dense_limit=DENSE_EIG_LIMIT):
    """Top-``k`` singular triplets ``(U, s, V)`` with ``M V ~= U diag(s)``."""
    rows, cols = M.shape
    if not 1 <= k <= min(rows, cols):
        raise ValueError(f"k={k} out of range for a {rows}x{cols} matrix")
    if max(rows, cols) <= dense_limit or k >= min(rows, cols) - 1:
        dense = M.toarray() if sp.issparse(M) else np.asarray(M, dtype=float)
        U, s, Vt = np.linalg.svd(dense, full_matrices=False)
        U, s, V = U[:, :k], s[:k], Vt[:k].T
    else:
        v0 = np.random.default_rng(seed).uniform(-1, 1, min(rows, cols))
        U, s, Vt = svds(sp.csr_array(M), k=k, v0=v0)
        order = np.argsort(s)[::-1]
        U, s, V = U[:, order], s[order], Vt[order].T
    signs = _signs(V)
    return U * signs, s, V * signs
