"""scikit-learn style wrappers around the clustering pipelines.

Every estimator's ``fit`` accepts either a :class:`~hyperwalk.hypergraph.Hypergraph`
or an incidence matrix ``R`` (hyperedges by vertices), plus optional edge
weights ``omega``, and stores vertex labels in ``labels_``.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import algorithms
from .hypergraph import Hypergraph
from .representations import KINDS, representation


def check_hypergraph(X, omega=None):
    """Coerce ``X`` to a validated :class:`Hypergraph`.

    Dense arrays and scipy sparse matrices are read as incidence matrices.
    Raises :class:`~hyperwalk.exceptions.HypergraphError` listing every
    structural problem found.
    """
    if isinstance(X, Hypergraph):
        if omega is not None:
            X = Hypergraph(X.R, omega)
    else:
        if not sp.issparse(X):
            X = np.asarray(X, dtype=float)
            if X.ndim != 2:
                raise ValueError(f"expected a 2-d incidence matrix, got shape {X.shape}")
        X = Hypergraph(X, omega)
    X.check()
    return X


def check_vertex_matrix(S, n):
    """Validate a symmetric nonnegative ``n x n`` vertex matrix such as citations."""
    S = sp.csr_array(S, dtype=float) if sp.issparse(S) else np.asarray(S, dtype=float)
    if S.shape != (n, n):
        raise ValueError(f"vertex matrix has shape {S.shape}, expected {(n, n)}")
    D = S.toarray() if sp.issparse(S) else S
    if not np.all(np.isfinite(D)) or np.any(D < 0):
        raise ValueError("vertex matrix must be finite and nonnegative")
    if np.abs(D - D.T).max() > 1e-12 * max(1.0, np.abs(D).max()):
        raise ValueError("vertex matrix must be symmetric")
    return S


class _HypergraphClusterer(ClusterMixin, BaseEstimator):
    _algorithm = None

    def _options(self):
        params = self.get_params()
        fields = algorithms.ClusterOptions.__dataclass_fields__
        return algorithms.ClusterOptions(**{k: v for k, v in params.items() if k in fields})

    def _run(self, H, S=None):
        return algorithms.run_algorithm(self._algorithm, H, self.n_clusters, self._options(), S=S)

    def fit(self, X, y=None, omega=None):
        H = check_hypergraph(X, omega)
        run = self._run(H)
        self.labels_ = run.labels
        self.diagnostics_ = run.diagnostics
        self.n_features_in_ = H.n_vertices
        return self

    def fit_predict(self, X, y=None, omega=None):
        return self.fit(X, omega=omega).labels_


class _SpectralParams:
    def __init__(self, n_clusters=2, seed=0, restarts=10, kmeans_max_iter=300, eig_tol=1e-8,
                 walk_tol=1e-13, walk_max_iter=100_000):
        self.n_clusters = n_clusters
        self.seed = seed
        self.restarts = restarts
        self.kmeans_max_iter = kmeans_max_iter
        self.eig_tol = eig_tol
        self.walk_tol = walk_tol
        self.walk_max_iter = walk_max_iter


class RDCSpec(_SpectralParams, _HypergraphClusterer):
    """Spectral clustering with the core matrix of the EDVW random walk.

    Parameters
    ----------
    n_clusters : int
    seed : int
        Seeds the eigensolver start vector and k-means restarts.
    restarts : int
        Number of k-means++ restarts; the lowest objective is kept.
    """

    _algorithm = "rdc-spec"


class CRWC(_SpectralParams, _HypergraphClusterer):
    """RDCSpec with vertex weights inside every hyperedge set to one."""

    _algorithm = "crwc"


class CHC(_HypergraphClusterer):
    """Spectral clustering on Zhou's clique-expansion operator."""

    _algorithm = "chc"

    def __init__(self, n_clusters=2, seed=0, restarts=10, kmeans_max_iter=300, eig_tol=1e-8):
        self.n_clusters = n_clusters
        self.seed = seed
        self.restarts = restarts
        self.kmeans_max_iter = kmeans_max_iter
        self.eig_tol = eig_tol


class RDCSym(_HypergraphClusterer):
    """Symmetric NMF of the core matrix; vertices go to their largest factor."""

    _algorithm = "rdc-sym"

    def __init__(self, n_clusters=2, seed=0, max_iter=500, tol=1e-5, walk_tol=1e-13,
                 walk_max_iter=100_000):
        self.n_clusters = n_clusters
        self.seed = seed
        self.max_iter = max_iter
        self.tol = tol
        self.walk_tol = walk_tol
        self.walk_max_iter = walk_max_iter


class NMFCluster(_HypergraphClusterer):
    """NMF of the transposed incidence matrix."""

    _algorithm = "nmf"

    def __init__(self, n_clusters=2, seed=0, max_iter=500, tol=1e-5):
        self.n_clusters = n_clusters
        self.seed = seed
        self.max_iter = max_iter
        self.tol = tol


class KMeansCluster(_HypergraphClusterer):
    """k-means on the incidence columns."""

    _algorithm = "km"

    def __init__(self, n_clusters=2, seed=0, restarts=10, kmeans_max_iter=300):
        self.n_clusters = n_clusters
        self.seed = seed
        self.restarts = restarts
        self.kmeans_max_iter = kmeans_max_iter


class SBC(_HypergraphClusterer):
    """Spectral bi-clustering of the degree-normalized incidence matrix."""

    _algorithm = "sbc"

    def __init__(self, n_clusters=2, seed=0, restarts=10, kmeans_max_iter=300,
                 sbc_vectors=None):
        self.n_clusters = n_clusters
        self.seed = seed
        self.restarts = restarts
        self.kmeans_max_iter = kmeans_max_iter
        self.sbc_vectors = sbc_vectors


class _JointClusterer(_HypergraphClusterer):
    def fit(self, X, y=None, omega=None, S=None):
        H = check_hypergraph(X, omega)
        if S is None:
            raise ValueError(f"{type(self).__name__}.fit needs the vertex matrix S")
        run = self._run(H, check_vertex_matrix(S, H.n_vertices))
        self.labels_ = run.labels
        self.diagnostics_ = run.diagnostics
        self.n_features_in_ = H.n_vertices
        return self

    def fit_predict(self, X, y=None, omega=None, S=None):
        return self.fit(X, omega=omega, S=S).labels_


class JointNMFCluster(_JointClusterer):
    """Joint NMF of the incidence matrix and a vertex similarity matrix ``S``.

    ``gamma`` and ``beta`` default to the data-scaled values of
    :func:`~hyperwalk.numerics.default_joint_params`.
    """

    _algorithm = "jnmf"

    def __init__(self, n_clusters=2, seed=0, gamma=None, beta=None, max_iter=500, tol=1e-5):
        self.n_clusters = n_clusters
        self.seed = seed
        self.gamma = gamma
        self.beta = beta
        self.max_iter = max_iter
        self.tol = tol


class JointSymNMFCluster(_JointClusterer):
    """Joint symmetric NMF of the core matrix and a vertex similarity matrix ``S``."""

    _algorithm = "jsnmf"

    def __init__(self, n_clusters=2, seed=0, alpha=None, gamma=None, beta=None, max_iter=500,
                 tol=1e-5, jsnmf_init="symnmf", walk_tol=1e-13, walk_max_iter=100_000):
        self.n_clusters = n_clusters
        self.seed = seed
        self.alpha = alpha
        self.gamma = gamma
        self.beta = beta
        self.max_iter = max_iter
        self.tol = tol
        self.jsnmf_init = jsnmf_init
        self.walk_tol = walk_tol
        self.walk_max_iter = walk_max_iter


class RepresentationTransformer(TransformerMixin, BaseEstimator):
    """Map a hypergraph to one of its vertex-by-vertex matrix representations.

    ``kind`` is one of ``T, L, normlap, gamma, delta, crwc, chungA, skew, bauer``.
    """

    def __init__(self, kind="T"):
        self.kind = kind

    def fit(self, X, y=None, omega=None):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; choose from {', '.join(KINDS)}")
        self.hypergraph_ = check_hypergraph(X, omega)
        self.representation_ = representation(self.kind, self.hypergraph_)
        return self

    def transform(self, X=None):
        check_is_fitted(self, "representation_")
        return self.representation_.matrix


ESTIMATORS = {
    "rdc-spec": RDCSpec,
    "rdc-sym": RDCSym,
    "chc": CHC,
    "crwc": CRWC,
    "nmf": NMFCluster,
    "km": KMeansCluster,
    "sbc": SBC,
    "jnmf": JointNMFCluster,
    "jsnmf": JointSymNMFCluster,
}
