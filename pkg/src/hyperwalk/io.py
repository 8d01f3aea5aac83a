"""Readers and writers: Matrix Market coordinate files, vectors, ID maps, labels."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .exceptions import FormatError
from .hypergraph import Hypergraph, as_csr

_HEADER = "%%MatrixMarket matrix coordinate {field} general"


def _fmt(x, field):
    return str(int(x)) if field == "integer" else repr(float(x))


def write_matrix_market(path, M, field="real", comment=None):
    """Write ``M`` as a 1-based coordinate Matrix Market file (explicit zeros dropped)."""
    if field not in ("real", "integer"):
        raise ValueError("field must be 'real' or 'integer'")
    M = as_csr(M).tocoo()
    order = np.lexsort((M.col, M.row))
    rows, cols, vals = M.row[order], M.col[order], M.data[order]
    lines = [_HEADER.format(field=field)]
    if comment:
        lines.extend("% " + c for c in str(comment).splitlines())
    lines.append(f"{M.shape[0]} {M.shape[1]} {len(vals)}")
    lines.extend(
        f"{r + 1} {c + 1} {_fmt(v, field)}" for r, c, v in zip(rows, cols, vals)
    )
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix_market(path):
    """Read a coordinate ``real``/``integer`` ``general`` Matrix Market file.

    Raises :class:`FormatError` on a malformed header, out-of-range or
    0-based indices, duplicate coordinates, or a wrong entry count.
    """
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise FormatError(f"{path}: empty file")
    head = lines[0].lower().split()
    if (
        len(head) != 5
        or head[0] != "%%matrixmarket"
        or head[1] != "matrix"
        or head[2] != "coordinate"
        or head[3] not in ("real", "integer")
        or head[4] != "general"
    ):
        raise FormatError(f"{path}: unsupported header {lines[0]!r}")
    body = [ln for ln in lines[1:] if ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise FormatError(f"{path}: missing size line")
    try:
        n_rows, n_cols, nnz = (int(t) for t in body[0].split())
    except ValueError:
        raise FormatError(f"{path}: bad size line {body[0]!r}") from None
    entries = body[1:]
    if len(entries) != nnz:
        raise FormatError(f"{path}: header declares {nnz} entries, found {len(entries)}")
    rows = np.empty(nnz, dtype=np.int64)
    cols = np.empty(nnz, dtype=np.int64)
    vals = np.empty(nnz, dtype=float)
    for k, ln in enumerate(entries):
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"{path}: bad entry line {ln!r}")
        try:
            r, c, v = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise FormatError(f"{path}: bad entry line {ln!r}") from None
        if not (1 <= r <= n_rows and 1 <= c <= n_cols):
            raise FormatError(
                f"{path}: index ({r}, {c}) outside 1..{n_rows} x 1..{n_cols}"
            )
        rows[k], cols[k], vals[k] = r - 1, c - 1, v
    keys = rows * n_cols + cols
    if np.unique(keys).size != nnz:
        raise FormatError(f"{path}: duplicate coordinates")
    M = sp.coo_array((vals, (rows, cols)), shape=(n_rows, n_cols))
    return as_csr(M)


def write_vector(path, v):
    Path(path).write_text("".join(repr(float(x)) + "\n" for x in np.asarray(v).ravel()))


def read_vector(path):
    try:
        return np.array(
            [float(ln) for ln in Path(path).read_text().splitlines() if ln.strip()]
        )
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from None


def read_ids(path):
    return [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]


def write_ids(path, ids):
    Path(path).write_text("".join(f"{i}\n" for i in ids))


def omega_path_for(mtx_path):
    p = Path(mtx_path)
    return p.with_name(p.stem + ".omega.txt")


def write_hypergraph(path, H):
    """Write ``R`` to ``path`` and the edge weights to ``<stem>.omega.txt``."""
    write_matrix_market(path, H.R)
    write_vector(omega_path_for(path), H.omega)


def read_hypergraph(path, omega_path=None):
    """Read a hypergraph; unit edge weights when no omega sidecar exists."""
    R = read_matrix_market(path)
    omega_path = omega_path_for(path) if omega_path is None else Path(omega_path)
    omega = read_vector(omega_path) if omega_path.exists() else None
    if omega is not None and omega.size != R.shape[0]:
        raise FormatError(
            f"{omega_path}: {omega.size} weights for {R.shape[0]} hyperedges"
        )
    return Hypergraph(R, omega)


def write_labels(path, labels, ids=None):
    """Write a ``vertex_id,cluster`` CSV."""
    labels = np.asarray(labels)
    ids = range(labels.size) if ids is None else ids
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["vertex_id", "cluster"])
        for i, c in zip(ids, labels):
            w.writerow([i, int(c)])


def read_labels(path):
    """Read a ``vertex_id,cluster`` CSV into ``(ids, labels)``."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [h.strip() for h in rows[0]] != ["vertex_id", "cluster"]:
        raise FormatError(f"{path}: expected header 'vertex_id,cluster'")
    ids, labels = [], []
    for row in rows[1:]:
        if not row:
            continue
        if len(row) != 2:
            raise FormatError(f"{path}: bad row {row!r}")
        try:
            labels.append(int(row[1]))
        except ValueError:
            raise FormatError(f"{path}: non-integer cluster {row[1]!r}") from None
        ids.append(row[0].strip())
    if len(set(ids)) != len(ids):
        raise FormatError(f"{path}: duplicate vertex ids")
    return ids, np.array(labels, dtype=int)
