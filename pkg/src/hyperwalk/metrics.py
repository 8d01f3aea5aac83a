"""Clustering agreement scores and cut-quality measures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .numerics.assignment import hungarian


def _labels(x):
    x = np.asarray(x)
    if x.ndim != 1:
        raise ValueError("labelings must be 1-d")
    return x


def _pair(x, y):
    x, y = _labels(x), _labels(y)
    if x.shape != y.shape:
        raise ValueError(f"labelings differ in length: {x.size} vs {y.size}")
    if x.size == 0:
        raise ValueError("labelings are empty")
    return x, y


def contingency(x, y):
    """Counts table ``N[a, b] = |{i : x_i = a, y_i = b}|`` over present labels."""
    x, y = _pair(x, y)
    xs, xi = np.unique(x, return_inverse=True)
    ys, yi = np.unique(y, return_inverse=True)
    N = np.zeros((xs.size, ys.size), dtype=np.int64)
    np.add.at(N, (xi, yi), 1)
    return N


def _entropy(counts):
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log(p)).sum())


def nmi(x, y):
    """Normalized mutual information ``2 I(X, Y) / (H(X) + H(Y))``.

    Two single-cluster labelings score 1; when only one side is a single
    cluster the score is 0.
    """
    N = contingency(x, y)
    n = N.sum()
    hx, hy = _entropy(N.sum(1)), _entropy(N.sum(0))
    if hx + hy == 0:
        return 1.0
    nz = N > 0
    pxy = N[nz] / n
    px = (N.sum(1) / n)[:, None].repeat(N.shape[1], 1)[nz]
    py = (N.sum(0) / n)[None, :].repeat(N.shape[0], 0)[nz]
    mi = float((pxy * np.log(pxy / (px * py))).sum())
    return float(min(1.0, max(0.0, 2.0 * mi / (hx + hy))))


def _matched(x, y, pair_score):
    N = contingency(x, y)
    sx, sy = N.sum(1), N.sum(0)
    scores = pair_score(N, sx[:, None], sy[None, :])
    size = max(N.shape)
    padded = np.zeros((size, size))
    padded[: N.shape[0], : N.shape[1]] = scores
    sigma = hungarian(padded)
    total = padded[np.arange(size), sigma].sum()
    xs, ys = np.unique(x), np.unique(y)
    matching = {
        xs[i].item(): ys[j].item()
        for i, j in enumerate(sigma)
        if i < xs.size and j < ys.size
    }
    return float(total / size), matching


def matched_f1(x, y):
    """Average per-cluster F1 under the score-maximizing cluster matching.

    Returns ``(score, matching)``. With unequal cluster counts the smaller
    side is padded with empty clusters scoring 0 and the total is divided by
    the larger count.
    """
    return _matched(x, y, lambda N, a, b: 2.0 * N / (a + b))


def matched_jaccard(x, y):
    """Average per-cluster Jaccard index under the best matching; see :func:`matched_f1`."""
    return _matched(x, y, lambda N, a, b: N / (a + b - N))


@dataclass(frozen=True)
class AgreementScores:
    nmi: float
    avg_f1: float
    jaccard: float
    matching: dict

    def as_dict(self):
        return {"nmi": self.nmi, "avg_f1": self.avg_f1, "jaccard": self.jaccard}


def agreement(pred, truth):
    f1, matching = matched_f1(pred, truth)
    jac, _ = matched_jaccard(pred, truth)
    return AgreementScores(nmi(pred, truth), f1, jac, matching)


# ---------------------------------------------------------------------------
# cuts


def _volumes(A, labels):
    A = sp.csr_array(A)
    labels = _labels(labels)
    if A.shape != (labels.size, labels.size):
        raise ValueError(f"matrix {A.shape} does not match {labels.size} labels")
    deg = np.asarray(A.sum(axis=1)).ravel()
    clusters = np.unique(labels)
    vols, bounds = [], []
    for c in clusters:
        inside = labels == c
        vol = deg[inside].sum()
        if not vol > 0:
            raise ValueError(f"cluster {c} has zero volume")
        internal = A[inside][:, inside].sum()
        vols.append(vol)
        bounds.append(A[inside].sum() - internal)
    return clusters, np.array(vols), np.array(bounds), deg.sum()


def av_ncut(A, labels):
    """Average normalized cut ``(1/2k) sum_i vol(dS_i) / vol(S_i)``.

    ``k`` counts the clusters present in ``labels``; volumes use the row sums
    of the symmetric weight matrix ``A``.
    """
    clusters, vols, bounds, _ = _volumes(A, labels)
    return float((bounds / vols).sum() / (2 * clusters.size))


def av_conductance(A, labels):
    """Average conductance ``(1/2k) sum_i vol(dS_i) / min(vol(S_i), vol(S_i^c))``."""
    clusters, vols, bounds, total = _volumes(A, labels)
    comp = total - vols
    denom = np.minimum(vols, comp)
    terms = np.divide(bounds, denom, out=np.zeros_like(bounds), where=denom > 0)
    return float(terms.sum() / (2 * clusters.size))


def directed_volumes(P, pi, labels):
    """Per-cluster ``(vol(S), vol(dS))`` with ``vol(S) = sum pi_u`` and
    ``vol(dS) = sum_{u in S, v not in S} pi_u P_uv``."""
    labels = _labels(labels)
    pi = np.asarray(pi, dtype=float)
    F = sp.diags_array(pi) @ sp.csr_array(P)
    clusters = np.unique(labels)
    vols, bounds = [], []
    for c in clusters:
        inside = labels == c
        vols.append(pi[inside].sum())
        bounds.append(F[inside].sum() - F[inside][:, inside].sum())
    return clusters, np.array(vols), np.array(bounds)


def directed_ncut(P, pi, labels, average=True):
    """Normalized cut of the walk using directed volumes.

    With ``average=True`` (default) the sum is scaled by ``1/(2k)``, matching
    :func:`av_ncut` on :func:`~hyperwalk.representations.chung_adjacency`;
    ``average=False`` gives the plain ``(1/2) sum`` normalized cut.
    """
    clusters, vols, bounds = directed_volumes(P, pi, labels)
    for c, v in zip(clusters, vols):
        if not v > 0:
            raise ValueError(f"cluster {c} has zero volume")
    scale = 2 * clusters.size if average else 2
    return float((bounds / vols).sum() / scale)
