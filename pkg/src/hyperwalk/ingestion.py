"""Hypergraph construction from term-document counts, plus synthetic data.

Documents become vertices and terms become hyperedges; the tf-idf value of
a term in a document is that document's weight inside the term's edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .exceptions import HypergraphError
from .hypergraph import (
    Hypergraph,
    as_csr,
    is_connected,
    largest_component_indices,
    subhypergraph,
    validate,
)

#: Floor applied to standard-deviation edge weights.
MIN_EDGE_WEIGHT = 1e-8


@dataclass(frozen=True, eq=False)
class CountsMatrix:
    """Term-by-document count matrix with string IDs for both axes."""

    counts: sp.csr_array
    terms: list
    docs: list

    def __init__(self, counts, terms=None, docs=None):
        counts = as_csr(counts)
        if counts.nnz and (np.any(counts.data < 0) or np.any(counts.data != np.rint(counts.data))):
            raise HypergraphError("counts must be nonnegative integers")
        n_terms, n_docs = counts.shape
        terms = [str(i) for i in range(n_terms)] if terms is None else list(terms)
        docs = [str(i) for i in range(n_docs)] if docs is None else list(docs)
        if len(terms) != n_terms or len(docs) != n_docs:
            raise HypergraphError(
                f"ID maps ({len(terms)} terms, {len(docs)} docs) do not match "
                f"counts shape {counts.shape}"
            )
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "docs", docs)

    def document_frequency(self):
        return np.diff(self.counts.indptr)


def document_frequency(R):
    """Number of nonzero entries in each row (term)."""
    return np.diff(as_csr(R).indptr)


def tfidf(C, log_tf=False):
    """tf-idf matrix ``R[w, d] = tf(w, d) * ln(N / df(w))``.

    ``tf`` is the raw count (``1 + ln(count)`` with ``log_tf``). Terms that
    occur in every document get idf 0 and are dropped. Returns ``(R, kept)``
    where ``kept`` indexes the surviving rows of ``C.counts``.
    """
    counts = C.counts
    n_terms, n_docs = counts.shape
    if n_docs == 0 or n_terms == 0:
        raise HypergraphError("empty counts matrix")
    doc_nnz = np.bincount(counts.indices, minlength=n_docs)
    if np.any(doc_nnz == 0):
        empty = np.flatnonzero(doc_nnz == 0)
        raise HypergraphError(f"empty documents: {[C.docs[i] for i in empty[:10]]}")
    df = np.diff(counts.indptr)
    kept = np.flatnonzero((df > 0) & (df < n_docs))
    R = counts[kept].astype(float)
    idf = np.log(n_docs / df[kept])
    if log_tf:
        R.data = 1.0 + np.log(R.data)
    R = sp.diags_array(idf) @ R
    return as_csr(R), kept


@dataclass(frozen=True)
class PruneResult:
    R: sp.csr_array
    kept_terms: np.ndarray
    kept_docs: np.ndarray
    dropped_terms: list = field(default_factory=list)
    dropped_docs: list = field(default_factory=list)


def prune(R, sparsity, df=None, n_docs=None):
    """Drop frequent and rare terms, then documents left empty.

    A term is dropped when ``df / N > sparsity`` (strict) or ``df <= 1``.
    ``df`` defaults to the row nonzero counts of ``R`` and ``N`` to its
    number of columns. Indices in the result refer to rows/columns of ``R``.
    """
    if not 0 < sparsity <= 1:
        raise ValueError(f"sparsity must be in (0, 1], got {sparsity}")
    R = as_csr(R)
    df = document_frequency(R) if df is None else np.asarray(df)
    n_docs = R.shape[1] if n_docs is None else n_docs
    frequent = df / n_docs > sparsity
    rare = df <= 1
    keep = ~(frequent | rare)
    kept_terms = np.flatnonzero(keep)
    if kept_terms.size == 0:
        raise HypergraphError(f"all {R.shape[0]} terms pruned at sparsity {sparsity}")
    R = R[kept_terms]
    doc_nnz = np.bincount(R.indices, minlength=R.shape[1])
    kept_docs = np.flatnonzero(doc_nnz > 0)
    R = R[:, kept_docs]
    return PruneResult(
        as_csr(R),
        kept_terms,
        kept_docs,
        np.flatnonzero(~keep).tolist(),
        np.flatnonzero(doc_nnz == 0).tolist(),
    )


def edge_weights_std(R):
    """Population standard deviation of each row of ``R`` (zeros included)."""
    R = as_csr(R)
    n = R.shape[1]
    mean = np.asarray(R.sum(axis=1)).ravel() / n
    sq = np.asarray(R.multiply(R).sum(axis=1)).ravel() / n
    var = np.maximum(sq - mean * mean, 0.0)
    return np.maximum(np.sqrt(var), MIN_EDGE_WEIGHT)


@dataclass(frozen=True, eq=False)
class TextHypergraph:
    hypergraph: Hypergraph
    doc_ids: list
    term_ids: list
    coverage: float
    report: dict


def build_text_hypergraph(C, sparsity, log_tf=False):
    """tf-idf, prune, std edge weights, then keep the largest component."""
    R, kept = tfidf(C, log_tf=log_tf)
    df = C.document_frequency()[kept]
    pr = prune(R, sparsity, df=df, n_docs=C.counts.shape[1])
    if pr.R.shape[1] < 2:
        raise HypergraphError("fewer than two documents survive pruning")
    H = Hypergraph(pr.R, edge_weights_std(pr.R))
    vertices, edges = largest_component_indices(H)
    H = subhypergraph(H, vertices, edges)
    doc_ids = [C.docs[i] for i in pr.kept_docs[vertices]]
    term_ids = [C.terms[i] for i in kept[pr.kept_terms[edges]]]
    problems = validate(H)
    if problems:
        raise HypergraphError("ingestion produced an invalid hypergraph: " + "; ".join(problems[:5]))
    coverage = len(doc_ids) / C.counts.shape[1]
    report = hypergraph_report(H)
    report.update(
        sparsity=sparsity,
        documents_in=C.counts.shape[1],
        terms_in=C.counts.shape[0],
        dropped_documents=C.counts.shape[1] - len(doc_ids),
        coverage=coverage,
    )
    return TextHypergraph(H, doc_ids, term_ids, coverage, report)


def hypergraph_report(H):
    """Size statistics: vertices, hyperedges and incidence density."""
    return {
        "vertices": H.n_vertices,
        "hyperedges": H.n_edges,
        "nnz_fraction": H.R.nnz / (H.n_vertices * H.n_edges),
    }


def sparsify_hypergraph(H, sparsity):
    """Apply the term-pruning rule to a general hypergraph.

    Edges touching more than a ``sparsity`` fraction of vertices, or only
    one vertex, are dropped (weights kept), then the largest component is
    taken. Returns ``(H', kept_vertices)``.
    """
    pr = prune(H.R, sparsity)
    sub = Hypergraph(pr.R, np.asarray(H.omega)[pr.kept_terms])
    vertices, edges = largest_component_indices(sub)
    return subhypergraph(sub, vertices, edges), pr.kept_docs[vertices]


# ---------------------------------------------------------------------------
# synthetic planted partitions


@dataclass(frozen=True)
class PlantedSpec:
    k: int
    sizes: tuple
    edges_per_block: int
    cross_edges: int
    edge_size_range: tuple = (3, 5)
    weight_skew: float = 1.0
    seed: int = 0
    max_retries: int = 100

    def check(self):
        lo, hi = self.edge_size_range
        if len(self.sizes) != self.k or self.k < 1:
            raise ValueError(f"need {self.k} block sizes, got {self.sizes}")
        if not 1 <= lo <= hi:
            raise ValueError(f"bad edge size range {self.edge_size_range}")
        if min(self.sizes) < hi:
            raise ValueError("every block must be at least as large as the largest edge")
        if self.edges_per_block < 0 or self.cross_edges < 0:
            raise ValueError("edge counts must be nonnegative")
        if self.cross_edges and self.k < 2:
            raise ValueError("cross edges need at least two blocks")
        if self.weight_skew < 1:
            raise ValueError("weight_skew must be >= 1")


def _sample_planted(spec, rng, truth, starts):
    lo, hi = spec.edge_size_range
    n = truth.size
    edges = []
    for b, size in enumerate(spec.sizes):
        for _ in range(spec.edges_per_block):
            s = int(rng.integers(lo, hi + 1))
            edges.append(starts[b] + rng.choice(size, size=s, replace=False))
    for _ in range(spec.cross_edges):
        while True:
            s = int(rng.integers(max(lo, 2), max(hi, 2) + 1))
            e = rng.choice(n, size=s, replace=False)
            if np.unique(truth[e]).size > 1:
                break
        edges.append(e)
    weights = [rng.uniform(1.0, spec.weight_skew, size=len(e)) for e in edges]
    return Hypergraph.from_edges([np.sort(e) for e in edges], n_vertices=n,
                                 weights=[w for w in weights])


def synthetic_planted(spec):
    """Random connected hypergraph with planted blocks and its ground truth.

    Sampling is repeated (same generator stream) until the hypergraph is
    valid and connected; raises after ``spec.max_retries`` attempts.
    """
    spec.check()
    truth = np.repeat(np.arange(spec.k), spec.sizes)
    starts = np.concatenate([[0], np.cumsum(spec.sizes)[:-1]])
    rng = np.random.default_rng(spec.seed)
    for _ in range(spec.max_retries):
        H = _sample_planted(spec, rng, truth, starts)
        if not validate(H) and is_connected(H):
            return H, truth
    raise HypergraphError(
        f"no connected sample in {spec.max_retries} attempts; add cross edges "
        "or in-block edges"
    )
