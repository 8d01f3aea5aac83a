import numpy as np
import pytest
from sklearn.base import clone

from conftest import dense
from hyperwalk.estimators import (
    CHC,
    ESTIMATORS,
    RDCSpec,
    RepresentationTransformer,
    check_hypergraph,
    check_vertex_matrix,
)
from hyperwalk.exceptions import HypergraphError
from hyperwalk.ingestion import PlantedSpec, synthetic_planted
from hyperwalk.metrics import nmi


@pytest.fixture(scope="module")
def planted():
    return synthetic_planted(PlantedSpec(2, (15, 15), 30, 2, seed=3))


def test_check_hypergraph_accepts_arrays_and_reports_problems(EX1):
    H = check_hypergraph(dense(EX1.R), omega=[1.0, 2.0])
    np.testing.assert_array_equal(H.omega, [1.0, 2.0])
    with pytest.raises(HypergraphError, match="vertex 2 isolated"):
        check_hypergraph(np.array([[1.0, 1.0, 0.0]]))
    with pytest.raises(ValueError):
        check_hypergraph(np.ones(3))


def test_check_vertex_matrix():
    with pytest.raises(ValueError):
        check_vertex_matrix(np.array([[0, 1], [2, 0]]), 2)
    with pytest.raises(ValueError):
        check_vertex_matrix(np.eye(3), 2)


@pytest.mark.parametrize("name", sorted(ESTIMATORS))
def test_estimators_fit_predict(planted, name):
    H, truth = planted
    est = ESTIMATORS[name](n_clusters=2, seed=1)
    clone(est)
    assert est.get_params()["n_clusters"] == 2
    kw = {}
    if name in ("jnmf", "jsnmf"):
        kw["S"] = (truth[:, None] == truth[None, :]).astype(float) - np.eye(truth.size)
    labels = est.fit_predict(H, **kw)
    assert labels.shape == (30,)
    np.testing.assert_array_equal(labels, est.labels_)
    if name != "km":
        assert nmi(labels, truth) > 0.9


def test_joint_estimators_need_vertex_matrix(planted):
    with pytest.raises(ValueError):
        ESTIMATORS["jnmf"](n_clusters=2).fit(planted[0])


def test_set_params_changes_seed(planted):
    est = RDCSpec(n_clusters=2).set_params(seed=4, restarts=3)
    assert est._options().seed == 4 and est._options().restarts == 3
    assert CHC(n_clusters=2).fit(planted[0].R).n_features_in_ == 30


def test_representation_transformer(EX2):
    T = RepresentationTransformer("T").fit_transform(EX2)
    assert dense(T)[0, 1] == pytest.approx(1 / 3)
    with pytest.raises(ValueError):
        RepresentationTransformer("bogus").fit(EX2)
