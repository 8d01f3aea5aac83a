"""End-to-end hypergraph clustering pipelines.

Random-walk methods (``rdc_spec``, ``rdc_sym``, ``crwc``) and Zhou's clique
expansion (``chc``) take a :class:`~hyperwalk.hypergraph.Hypergraph`; the
incidence-matrix baselines (``nmf_cluster``, ``kmeans_cluster``, ``sbc``,
``jnmf_cluster``) take ``R`` directly, edges by vertices.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.sparse as sp

from .exceptions import DisconnectedHypergraphError, HypergraphError
from .hypergraph import Hypergraph, as_csr, is_connected
from .numerics import jnmf, jsnmf, kmeans, nmf, symmetric_eigs, symnmf, truncated_svd
from .representations import core_matrix, crwc_transition, zhou_delta
from .walk import WalkState, random_walk


@dataclass(frozen=True)
class ClusterOptions:
    """Solver settings shared by every pipeline.

    ``seed`` drives all randomness: eigensolver start vectors and k-means
    restarts use ``seed``, factor initializations use ``seed + 1``.
    """

    seed: int = 0
    restarts: int = 10
    kmeans_max_iter: int = 300
    eig_tol: float = 1e-8
    walk_tol: float = 1e-13
    walk_max_iter: int = 100_000
    max_iter: int = 500
    tol: float = 1e-5
    alpha: float | None = None
    beta: float | None = None
    gamma: float | None = None
    sbc_vectors: int | None = None
    jsnmf_init: str = "symnmf"

    def with_(self, **kw):
        return replace(self, **kw)


@dataclass
class ClusterRun:
    algorithm: str
    k: int
    labels: np.ndarray
    diagnostics: dict = field(default_factory=dict)

    @property
    def empty_clusters(self):
        counts = np.bincount(self.labels, minlength=self.k)
        return np.flatnonzero(counts == 0).tolist()


def _opts(opts):
    return ClusterOptions() if opts is None else opts


def _check_k(k, n):
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for {n} vertices")


def _require_connected(H):
    H.check()
    if not is_connected(H):
        raise DisconnectedHypergraphError(
            "hypergraph is disconnected; cluster largest_component(H) or each "
            "component separately"
        )


def _incidence(R):
    """Accept a Hypergraph (checked for connectivity) or a raw incidence matrix."""
    if isinstance(R, Hypergraph):
        _require_connected(R)
        return R.R
    R = as_csr(R)
    if R.nnz and np.any(R.data < 0):
        raise HypergraphError("incidence matrix has negative entries")
    return R


def normalize_rows(U):
    """Scale rows to unit 2-norm; all-zero rows stay zero and are reported."""
    norms = np.linalg.norm(U, axis=1)
    zero = norms == 0
    out = U.copy()
    out[~zero] /= norms[~zero, None]
    return out, np.flatnonzero(zero)


def normalize_columns(U):
    norms = np.linalg.norm(U, axis=0)
    norms[norms == 0] = 1.0
    return U / norms


def argmax_labels(U):
    """Row-wise argmax; ties go to the lowest column index."""
    return np.argmax(U, axis=1)


def _finish(name, k, labels, diag, start):
    diag["wall_time"] = time.perf_counter() - start
    run = ClusterRun(name, k, np.asarray(labels, dtype=int), diag)
    diag["empty_clusters"] = run.empty_clusters
    return run


def spectral_embedding_labels(S, k, opts, diag):
    """Top-``k`` eigenvectors, row normalization, then k-means."""
    eig = symmetric_eigs(S, k, seed=opts.seed, tol=opts.eig_tol)
    V, w = eig.vectors, eig.values
    SV = S @ V
    diag["eigenvalues"] = w.tolist()
    diag["eig_residual"] = float(np.linalg.norm(SV - V * w))
    U, zero_rows = normalize_rows(V)
    diag["zero_rows"] = zero_rows.tolist()
    km = kmeans(U, k, seed=opts.seed, restarts=opts.restarts, max_iter=opts.kmeans_max_iter)
    diag["kmeans_objective"] = km.objective
    diag["kmeans_restart"] = km.restart
    return km.labels


def _walk(H, opts, walk):
    if walk is None:
        walk = random_walk(H, tol=opts.walk_tol, max_iter=opts.walk_max_iter)
    return walk


def _walk_diag(diag, walk):
    diag["stationary_residual"] = walk.residual
    diag["stationary_iterations"] = walk.iterations


def rdc_spec(H, k, opts=None, walk=None):
    """Spectral clustering on the core matrix ``T`` of the EDVW walk."""
    start = time.perf_counter()
    opts = _opts(opts)
    _require_connected(H)
    _check_k(k, H.n_vertices)
    walk = _walk(H, opts, walk)
    diag = {}
    _walk_diag(diag, walk)
    labels = spectral_embedding_labels(core_matrix(walk.P, walk.pi), k, opts, diag)
    return _finish("rdc-spec", k, labels, diag, start)


def rdc_sym(H, k, opts=None, walk=None):
    """Symmetric NMF of ``T``; each vertex goes to its largest factor column."""
    start = time.perf_counter()
    opts = _opts(opts)
    _require_connected(H)
    _check_k(k, H.n_vertices)
    walk = _walk(H, opts, walk)
    diag = {}
    _walk_diag(diag, walk)
    T = core_matrix(walk.P, walk.pi)
    res = symnmf(T, k, seed=opts.seed + 1, max_iter=opts.max_iter, tol=opts.tol)
    diag.update(objective_trace=res.objective_trace, iterations=res.iterations,
                converged=res.converged)
    return _finish("rdc-sym", k, argmax_labels(res["F"]), diag, start)


def chc(H, k, opts=None):
    """Spectral clustering on Zhou's clique-expansion operator."""
    start = time.perf_counter()
    opts = _opts(opts)
    _require_connected(H)
    _check_k(k, H.n_vertices)
    diag = {}
    labels = spectral_embedding_labels(zhou_delta(H), k, opts, diag)
    return _finish("chc", k, labels, diag, start)


def crwc(H, k, opts=None):
    """RDC-Spec with the uniform-within-edge walk in place of the EDVW walk."""
    start = time.perf_counter()
    opts = _opts(opts)
    _require_connected(H)
    _check_k(k, H.n_vertices)
    walk = WalkState.from_matrix(crwc_transition(H), opts.walk_tol, opts.walk_max_iter)
    diag = {}
    _walk_diag(diag, walk)
    labels = spectral_embedding_labels(core_matrix(walk.P, walk.pi), k, opts, diag)
    return _finish("crwc", k, labels, diag, start)


def nmf_cluster(R, k, opts=None):
    """NMF of ``R^T``; documents go to the argmax of the column-normalized factor."""
    start = time.perf_counter()
    opts = _opts(opts)
    R = _incidence(R)
    _check_k(k, R.shape[1])
    res = nmf(R.T.tocsr(), k, seed=opts.seed + 1, max_iter=opts.max_iter, tol=opts.tol)
    diag = {"objective_trace": res.objective_trace, "iterations": res.iterations,
            "converged": res.converged}
    labels = argmax_labels(normalize_columns(res["U"]))
    return _finish("nmf", k, labels, diag, start)


def kmeans_cluster(R, k, opts=None):
    """k-means on the document (column) vectors of ``R``."""
    start = time.perf_counter()
    opts = _opts(opts)
    R = _incidence(R)
    _check_k(k, R.shape[1])
    km = kmeans(R.T.tocsr(), k, seed=opts.seed, restarts=opts.restarts,
                max_iter=opts.kmeans_max_iter)
    diag = {"kmeans_objective": km.objective, "kmeans_restart": km.restart}
    return _finish("km", k, km.labels, diag, start)


def sbc(R, k, opts=None):
    """Spectral bi-clustering of the degree-normalized incidence matrix.

    Documents are embedded with right singular vectors ``2 .. l + 1`` where
    ``l = ceil(log2 k)`` (override with ``opts.sbc_vectors``), scaled by
    ``D2^-1/2``, row-normalized and clustered with k-means.
    """
    start = time.perf_counter()
    opts = _opts(opts)
    R = _incidence(R)
    _check_k(k, R.shape[1])
    d1 = np.asarray(R.sum(axis=1)).ravel()
    d2 = np.asarray(R.sum(axis=0)).ravel()
    if np.any(d1 == 0) or np.any(d2 == 0):
        raise HypergraphError("incidence matrix has zero rows or columns; prune it first")
    An = sp.diags_array(d1**-0.5) @ R @ sp.diags_array(d2**-0.5)
    ell = opts.sbc_vectors or max(1, math.ceil(math.log2(k)))
    rank = min(ell + 1, min(R.shape))
    _, s, V = truncated_svd(An.tocsr(), rank, seed=opts.seed)
    diag = {"singular_values": s.tolist()}
    diag["degenerate"] = bool(rank < 2 or s[1] <= 1e-10 * s[0])
    Z = V[:, 1:rank] if rank > 1 else V
    Z = Z * (d2**-0.5)[:, None]
    Z, zero_rows = normalize_rows(Z)
    diag["zero_rows"] = zero_rows.tolist()
    km = kmeans(Z, k, seed=opts.seed, restarts=opts.restarts, max_iter=opts.kmeans_max_iter)
    diag["kmeans_objective"] = km.objective
    return _finish("sbc", k, km.labels, diag, start)


def jnmf_cluster(R, S, k, opts=None):
    """Joint NMF of the incidence matrix ``R`` and a symmetric vertex matrix ``S``."""
    start = time.perf_counter()
    opts = _opts(opts)
    R = _incidence(R)
    _check_k(k, R.shape[1])
    res = jnmf(R, S, k, gamma=opts.gamma, beta=opts.beta, seed=opts.seed + 1,
               max_iter=opts.max_iter, tol=opts.tol)
    diag = {"objective_trace": res.objective_trace, "iterations": res.iterations,
            "converged": res.converged}
    labels = argmax_labels(normalize_columns(res["M"]))
    return _finish("jnmf", k, labels, diag, start)


def jsnmf_cluster(C, S, k, opts=None):
    """Joint symmetric NMF of ``C`` (normally the core matrix ``T``) and ``S``."""
    start = time.perf_counter()
    opts = _opts(opts)
    _check_k(k, C.shape[0])
    res = jsnmf(C, S, k, alpha=opts.alpha, gamma=opts.gamma, beta=opts.beta,
                seed=opts.seed + 1, max_iter=opts.max_iter, tol=opts.tol,
                init=opts.jsnmf_init)
    diag = {"objective_trace": res.objective_trace, "iterations": res.iterations,
            "converged": res.converged}
    labels = argmax_labels(normalize_columns(res["M"]))
    return _finish("jsnmf", k, labels, diag, start)


ALGORITHMS = ("rdc-spec", "rdc-sym", "chc", "crwc", "nmf", "km", "sbc", "jnmf", "jsnmf")


def run_algorithm(name, H, k, opts=None, S=None, walk=None):
    """Dispatch ``name`` on hypergraph ``H``; ``S`` is needed by the joint methods."""
    opts = _opts(opts)
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
    if name in ("jnmf", "jsnmf") and S is None:
        raise ValueError(f"{name} needs a symmetric vertex matrix S (e.g. citations)")
    if name == "rdc-spec":
        return rdc_spec(H, k, opts, walk)
    if name == "rdc-sym":
        return rdc_sym(H, k, opts, walk)
    if name == "chc":
        return chc(H, k, opts)
    if name == "crwc":
        return crwc(H, k, opts)
    if name == "nmf":
        return nmf_cluster(H, k, opts)
    if name == "km":
        return kmeans_cluster(H, k, opts)
    if name == "sbc":
        return sbc(H, k, opts)
    if name == "jnmf":
        return jnmf_cluster(H, S, k, opts)
    _require_connected(H)
    walk = _walk(H, opts, walk)
    return jsnmf_cluster(core_matrix(walk.P, walk.pi), S, k, opts)
