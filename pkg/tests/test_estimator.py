import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from conftest import P4, TWO_TRIANGLES
from starpcg.estimator import StarPCGRecognizer
from starpcg.graph import Graph
from starpcg.validation import check_graph, check_pairs, to_adjacency


def test_fit_predict_on_graph():
    est = StarPCGRecognizer().fit(P4)
    assert est.is_star_pcg_ and est.certificate_ is None
    pairs = [(u, v) for u in range(4) for v in range(4)]
    got = est.predict(pairs)
    want = np.array([P4.has_edge(u, v) for u, v in pairs])
    assert (got == want).all()
    assert sorted(est.ordering_) == [0, 1, 2, 3]
    assert est.witness().dmin == est.dmin_


def test_fit_on_adjacency_matrix():
    est = StarPCGRecognizer().fit(to_adjacency(TWO_TRIANGLES))
    assert not est.is_star_pcg_
    assert est.certificate_["kind"] == "two_nonbipartite_components"
    assert est.weights_ is None
    with pytest.raises(ValueError):
        est.predict([(0, 1)])


def test_unfitted_and_params():
    est = StarPCGRecognizer(lookahead=False)
    with pytest.raises(NotFittedError):
        est.predict([(0, 1)])
    assert est.get_params() == {"lookahead": False}
    assert clone(est).set_params(lookahead=True).lookahead is True


def test_check_graph_validation():
    assert check_graph(P4) is P4
    assert check_graph([[0, 1], [1, 0]]) == Graph.complete(2)
    for bad in ([[0, 1, 0]], [[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 2], [2, 0]]):
        with pytest.raises(ValueError):
            check_graph(bad)


def test_check_pairs_validation():
    assert check_pairs([], 3).shape == (0, 2)
    with pytest.raises(ValueError):
        check_pairs([(0, 3)], 3)
    with pytest.raises(ValueError):
        check_pairs([(0, 1, 2)], 3)
    with pytest.raises(ValueError):
        check_pairs([(0.5, 1.0)], 3)
