import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from eigenpoly.catalog import polytope_points
from eigenpoly.estimators import EigenpolytopeEmbedding, IzmestievEstimator
from eigenpoly.graphs import parse_generator_spec


def test_embedding_params_and_clone():
    est = EigenpolytopeEmbedding(k=3, certify=True)
    assert est.get_params()["k"] == 3
    c = clone(est)
    assert c.get_params() == est.get_params() and c is not est


def test_embedding_fit_transform_matrix_and_graph():
    g = parse_generator_spec("hypercube:3")
    A = g.adjacency
    Y = EigenpolytopeEmbedding(certify=True).fit_transform(A)
    assert Y.shape == (8, 3) and np.allclose(Y.T @ Y, np.eye(3))
    assert np.allclose(A @ Y, Y)  # theta_2 = 1
    est = EigenpolytopeEmbedding(certify=True).fit(g)
    assert est.certificate_.kind == "spectral_graph" and est.n_components_ == 3
    assert est.theta_ == pytest.approx(1.0)


def test_embedding_not_fitted():
    with pytest.raises(NotFittedError):
        EigenpolytopeEmbedding().transform(np.zeros((3, 3)))


@pytest.mark.parametrize("A", [
    np.ones((2, 3)),
    np.array([[0, 1], [0, 0]]),
    np.array([[0, 2], [2, 0]]),
    np.eye(3),
    np.array([[0, np.nan], [np.nan, 0]]),
])
def test_embedding_rejects_bad_adjacency(A):
    with pytest.raises(ValueError):
        EigenpolytopeEmbedding().fit(A)


def test_embedding_bad_k_and_size():
    A = parse_generator_spec("cycle:5").adjacency
    with pytest.raises(ValueError):
        EigenpolytopeEmbedding(k=0).fit(A)
    est = EigenpolytopeEmbedding().fit(A)
    with pytest.raises(ValueError):
        est.transform(parse_generator_spec("cycle:6").adjacency)


def test_izmestiev_estimator():
    est = IzmestievEstimator().fit(polytope_points("cube"))
    assert est.audit_.passed and est.X_.shape == (8, 8)
    fd = clone(est).set_params(method="fd").fit(polytope_points("cube"))
    assert np.abs(fd.X_ - est.X_).max() < 1e-6


def test_izmestiev_estimator_validation():
    with pytest.raises(ValueError):
        IzmestievEstimator(method="exact").fit(polytope_points("cube"))
    with pytest.raises(ValueError):
        IzmestievEstimator().fit(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        IzmestievEstimator().fit(np.array([[0.0, np.inf], [1, 0], [0, 1]]))
