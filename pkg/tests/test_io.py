import numpy as np
import pytest
import scipy.io
import scipy.sparse as sp

from conftest import dense, random_hypergraph
from hyperwalk import io
from hyperwalk.exceptions import FormatError


def test_matrix_market_round_trip(tmp_path, rng):
    M = sp.random(7, 5, density=0.4, random_state=1, format="csr") * 3.7
    path = tmp_path / "m.mtx"
    io.write_matrix_market(path, M)
    text = path.read_text().splitlines()
    assert text[0] == "%%MatrixMarket matrix coordinate real general"
    # scipy's reader as independent oracle
    np.testing.assert_array_equal(scipy.io.mmread(path).toarray(), M.toarray())
    np.testing.assert_array_equal(dense(io.read_matrix_market(path)), M.toarray())


def test_integer_field_and_one_based(tmp_path):
    path = tmp_path / "c.mtx"
    io.write_matrix_market(path, np.array([[0, 2], [3, 0]]), field="integer")
    lines = path.read_text().splitlines()
    assert lines[1:] == ["2 2 2", "1 2 2", "2 1 3"]


@pytest.mark.parametrize("body,msg", [
    ("%%MatrixMarket matrix array real general\n2 2\n", "header"),
    ("%%MatrixMarket matrix coordinate real general\n2 2 1\n0 1 1.0\n", "outside"),
    ("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n", "outside"),
    ("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n1 1 2.0\n", "duplicate"),
    ("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1.0\n", "declares"),
    ("%%MatrixMarket matrix coordinate real general\n2 x 3\n", "size"),
])
def test_matrix_market_rejects_malformed(tmp_path, body, msg):
    path = tmp_path / "bad.mtx"
    path.write_text(body)
    with pytest.raises(FormatError, match=msg):
        io.read_matrix_market(path)


def test_hypergraph_round_trip(tmp_path, rng):
    H = random_hypergraph(rng, n_max=20)
    path = tmp_path / "h.mtx"
    io.write_hypergraph(path, H)
    assert (tmp_path / "h.omega.txt").exists()
    G = io.read_hypergraph(path)
    np.testing.assert_array_equal(dense(G.R), dense(H.R))
    np.testing.assert_array_equal(G.omega, H.omega)


def test_hypergraph_without_omega_and_bad_omega(tmp_path):
    path = tmp_path / "h.mtx"
    io.write_matrix_market(path, np.ones((2, 3)))
    np.testing.assert_array_equal(io.read_hypergraph(path).omega, [1.0, 1.0])
    (tmp_path / "h.omega.txt").write_text("1.0\n")
    with pytest.raises(FormatError):
        io.read_hypergraph(path)


def test_labels_round_trip(tmp_path):
    path = tmp_path / "l.csv"
    io.write_labels(path, [2, 0, 1], ids=["a", "b", "c"])
    assert path.read_text() == "vertex_id,cluster\na,2\nb,0\nc,1\n"
    ids, labels = io.read_labels(path)
    assert ids == ["a", "b", "c"]
    np.testing.assert_array_equal(labels, [2, 0, 1])
    path.write_text("vertex_id,cluster\na,1\na,2\n")
    with pytest.raises(FormatError):
        io.read_labels(path)
    path.write_text("id,c\na,1\n")
    with pytest.raises(FormatError):
        io.read_labels(path)
