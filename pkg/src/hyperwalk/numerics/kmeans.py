"""Seeded k-means with k-means++ initialization and restarts."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp


@dataclass(frozen=True)
class KMeansResult:
    labels: np.ndarray
    objective: float
    centers: np.ndarray
    iterations: int
    restart: int
    objective_trace: list = field(default_factory=list)
    repairs: int = 0


def _row_sq_norms(X):
    if sp.issparse(X):
        return np.asarray(X.multiply(X).sum(axis=1)).ravel()
    return (X * X).sum(1)


def _row(X, i):
    return X[[i]].toarray()[0] if sp.issparse(X) else X[i]


def _sq_dists(X, C, xx=None):
    xx = _row_sq_norms(X) if xx is None else xx
    d = xx[:, None] - 2.0 * np.asarray(X @ C.T) + (C * C).sum(1)[None, :]
    return np.maximum(d, 0.0)


def kmeans_plusplus(X, k, rng, xx=None):
    n = X.shape[0]
    centers = np.empty((k, X.shape[1]))
    centers[0] = _row(X, rng.integers(n))
    closest = _sq_dists(X, centers[:1], xx)[:, 0]
    for j in range(1, k):
        total = closest.sum()
        if total > 0:
            idx = rng.choice(n, p=closest / total)
        else:
            idx = rng.integers(n)
        centers[j] = _row(X, idx)
        closest = np.minimum(closest, _sq_dists(X, centers[j:j + 1], xx)[:, 0])
    return centers


def _cluster_sums(X, labels, k):
    n = X.shape[0]
    onehot = sp.csr_array((np.ones(n), (labels, np.arange(n))), shape=(k, n))
    return np.asarray((onehot @ X).toarray() if sp.issparse(X) else onehot @ X)


def _lloyd(X, centers, max_iter, xx):
    k = centers.shape[0]
    rows = np.arange(X.shape[0])
    trace = []
    labels = None
    repairs = 0
    it = 0
    for it in range(1, max_iter + 1):
        d = _sq_dists(X, centers, xx)
        new = np.argmin(d, axis=1)
        trace.append(float(d[rows, new].sum()))
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        counts = np.bincount(labels, minlength=k)
        sums = _cluster_sums(X, labels, k)
        nonempty = counts > 0
        centers = centers.copy()
        centers[nonempty] = sums[nonempty] / counts[nonempty, None]
        empty = np.flatnonzero(~nonempty)
        if empty.size:
            # reseed each empty cluster at the point farthest from its centroid
            far = d[rows, labels]
            for j in empty:
                i = int(np.argmax(far))
                centers[j] = _row(X, i)
                far[i] = -1.0
                repairs += 1
    return labels, centers, it, trace, repairs


def kmeans(X, k, seed=0, restarts=10, max_iter=300):
    """Cluster the rows of ``X`` into ``k`` groups.

    Each restart draws its own k-means++ seeding from a child of ``seed``;
    the lowest final objective wins, ties going to the earliest restart.
    """
    X = sp.csr_array(X, dtype=float) if sp.issparse(X) else np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError("points must be a 2-d array")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    xx = _row_sq_norms(X)
    n = X.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"cannot form k={k} clusters from {n} points")
    best = None
    children = np.random.SeedSequence(seed).spawn(max(1, restarts))
    for r, child in enumerate(children):
        rng = np.random.default_rng(child)
        centers = kmeans_plusplus(X, k, rng, xx)
        labels, centers, iters, trace, repairs = _lloyd(X, centers, max_iter, xx)
        obj = trace[-1]
        if best is None or obj < best.objective:
            best = KMeansResult(labels, obj, centers, iters, r, trace, repairs)
    return best
