"""Hypergraph model with edge-dependent vertex weights.

A hypergraph is stored as its weighted incidence matrix ``R`` (edges by
vertices, ``R[e, v]`` is the weight of vertex ``v`` inside edge ``e``)
together with a vector ``omega`` of positive hyperedge weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _cc

from .exceptions import HypergraphError

#: Largest number of entries a matrix may have before dense conversion is refused.
DENSE_LIMIT = 2**24


def as_csr(M, dtype=np.float64):
    """Return ``M`` as a canonical CSR array (sorted indices, no explicit zeros)."""
    if sp.issparse(M):
        out = sp.csr_array(M, dtype=dtype, copy=True)
    else:
        arr = np.asarray(M, dtype=dtype)
        if arr.ndim != 2:
            raise HypergraphError(f"expected a 2-d matrix, got shape {arr.shape}")
        out = sp.csr_array(arr)
    out.sum_duplicates()
    out.eliminate_zeros()
    out.sort_indices()
    return out


def to_dense(M, limit=DENSE_LIMIT):
    """Densify ``M``, refusing when it has more than ``limit`` entries."""
    if not sp.issparse(M):
        return np.asarray(M, dtype=float)
    rows, cols = M.shape
    if rows * cols > limit:
        raise MemoryError(
            f"refusing to densify a {rows}x{cols} matrix (limit {limit} entries)"
        )
    return M.toarray()


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """Immutable EDVW hypergraph.

    Parameters
    ----------
    R : array-like or sparse, shape (n_edges, n_vertices)
        Weighted incidence matrix; nonzero entries are the edge-dependent
        vertex weights.
    omega : array-like, shape (n_edges,), optional
        Hyperedge weights. Defaults to all ones.

    Construction canonicalizes ``R`` but does not validate it; call
    :func:`validate` (or :meth:`check`) for diagnostics.
    """

    R: sp.csr_array
    omega: np.ndarray

    def __init__(self, R, omega=None):
        R = as_csr(R)
        if omega is None:
            omega = np.ones(R.shape[0])
        omega = np.array(omega, dtype=float).ravel()
        omega.flags.writeable = False
        for arr in (R.data, R.indices, R.indptr):
            arr.flags.writeable = False
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "omega", omega)

    @classmethod
    def from_edges(cls, edges, n_vertices=None, weights=None, omega=None):
        """Build a hypergraph from a list of vertex-index collections.

        ``weights[i]`` gives the vertex weights of ``edges[i]`` in the same
        order; unit weights when omitted.
        """
        edges = [list(e) for e in edges]
        if n_vertices is None:
            n_vertices = 1 + max((max(e) for e in edges if e), default=-1)
        rows, cols, vals = [], [], []
        for i, e in enumerate(edges):
            w = np.ones(len(e)) if weights is None else np.asarray(weights[i], float)
            if len(w) != len(e):
                raise HypergraphError(f"edge {i}: {len(e)} vertices but {len(w)} weights")
            rows.extend([i] * len(e))
            cols.extend(e)
            vals.extend(w)
        R = sp.coo_array((vals, (rows, cols)), shape=(len(edges), n_vertices))
        if R.nnz and len(set(zip(rows, cols))) != len(rows):
            raise HypergraphError("a vertex appears twice in the same edge")
        return cls(R, omega)

    @property
    def n_vertices(self):
        return self.R.shape[1]

    @property
    def n_edges(self):
        return self.R.shape[0]

    @property
    def pattern(self):
        """0/1 incidence matrix ``X`` with the same sparsity as ``R``."""
        X = self.R.copy()
        X.data = np.ones_like(X.data)
        return X

    def edge(self, e):
        """Vertex indices of edge ``e``."""
        return self.R.indices[self.R.indptr[e]:self.R.indptr[e + 1]].copy()

    def check(self):
        """Raise :class:`HypergraphError` listing every violation, if any."""
        problems = validate(self)
        if problems:
            raise HypergraphError("invalid hypergraph: " + "; ".join(problems))
        return self

    def __repr__(self):
        return (
            f"Hypergraph(n_vertices={self.n_vertices}, n_edges={self.n_edges}, "
            f"nnz={self.R.nnz})"
        )


def validate(H):
    """Return a list of invariant violations; empty when ``H`` is valid."""
    problems = []
    R = H.R
    if H.omega.shape != (H.n_edges,):
        problems.append(
            f"omega has length {H.omega.size}, expected {H.n_edges}"
        )
    if not np.all(np.isfinite(R.data)):
        problems.append("R has non-finite entries")
    coo = R.tocoo()
    for i in np.flatnonzero(~(coo.data > 0)):
        problems.append(f"entry ({coo.row[i]}, {coo.col[i]}) nonpositive")
    row_nnz = np.diff(R.indptr)
    for e in np.flatnonzero(row_nnz == 0):
        problems.append(f"edge {e} empty")
    col_nnz = np.bincount(R.indices, minlength=H.n_vertices)
    for v in np.flatnonzero(col_nnz == 0):
        problems.append(f"vertex {v} isolated")
    if H.omega.shape == (H.n_edges,):
        for e in np.flatnonzero(~(H.omega > 0)):
            problems.append(f"edge weight {e} nonpositive")
    return problems


def dual(H, omega=None):
    """Dual hypergraph: vertices and edges swap roles.

    The dual's edge weights default to ones since there is no canonical
    choice.
    """
    H.check()
    return Hypergraph(H.R.T, omega)


def _component_labels(H):
    n, m = H.n_vertices, H.n_edges
    # bipartite vertex/edge graph: nodes 0..n-1 are vertices, n..n+m-1 edges
    X = H.pattern
    B = sp.block_array([[None, X.T], [X, None]], format="csr")
    _, labels = _cc(B, directed=False)
    return labels[:n], labels[n:]


def connected_components(H):
    """Components as ``(vertices, edges)`` index arrays.

    Components are ordered by their smallest vertex index.
    """
    vlab, elab = _component_labels(H)
    order = {}
    for v, c in enumerate(vlab):
        order.setdefault(c, len(order))
    comps = []
    for c in sorted(order, key=order.get):
        comps.append((np.flatnonzero(vlab == c), np.flatnonzero(elab == c)))
    return comps


def is_connected(H):
    if H.n_vertices == 0:
        return False
    vlab, _ = _component_labels(H)
    return bool(np.all(vlab == vlab[0]))


def largest_component_indices(H):
    """Vertex and edge indices of the largest vertex component.

    Ties go to the component containing the smallest vertex index.
    """
    comps = connected_components(H)
    best = max(range(len(comps)), key=lambda i: (len(comps[i][0]), -i))
    return comps[best]


def subhypergraph(H, vertices, edges):
    """Hypergraph induced on the given vertex and edge index arrays."""
    R = H.R[np.asarray(edges)][:, np.asarray(vertices)]
    return Hypergraph(R, H.omega[np.asarray(edges)])


def largest_component(H):
    """Largest connected sub-hypergraph and the kept (old) vertex indices.

    New vertex ``i`` is old vertex ``vertices[i]``; a connected ``H`` is
    returned unchanged with the identity map.
    """
    vertices, edges = largest_component_indices(H)
    if len(vertices) == H.n_vertices and len(edges) == H.n_edges:
        return H, np.arange(H.n_vertices)
    return subhypergraph(H, vertices, edges), vertices


def clique_adjacency(H):
    """Clique-expansion adjacency ``X^T X`` (shared-edge counts)."""
    X = H.pattern
    A = (X.T @ X).tocsr()
    A.data = np.rint(A.data)
    return A.astype(np.int64)

