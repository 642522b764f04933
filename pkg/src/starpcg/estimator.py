"""Scikit-learn style facade over :func:`starpcg.recognize.recognize`."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .pcr import StarPCR
from .recognize import recognize
from .validation import check_graph, check_pairs


class StarPCGRecognizer(BaseEstimator):
    """Decide star-PCG membership of one graph and expose the witness.

    ``fit`` takes a :class:`~starpcg.graph.Graph` or an adjacency matrix.
    After fitting, ``is_star_pcg_`` holds the verdict. On a yes,
    ``ordering_``, ``weights_`` (exact fractions, by vertex id), ``dmin_``
    and ``dmax_`` describe the normalized star; on a no, ``certificate_``
    holds the refusal as a dict. ``predict`` maps vertex pairs to the
    adjacency the witness realizes.

    Parameters
    ----------
    lookahead : bool
        Validate each synthesis step against the exact completable range.
    """

    def __init__(self, lookahead: bool = True):
        self.lookahead = lookahead

    def fit(self, X, y=None):
        g = check_graph(X)
        outcome = recognize(g, lookahead=self.lookahead)
        self.graph_ = g
        self.n_vertices_ = g.n
        self.outcome_ = outcome
        self.is_star_pcg_ = outcome.is_star_pcg
        self.certificate_ = None if outcome.refusal is None else outcome.refusal.to_dict()
        if outcome.is_star_pcg:
            pcr = outcome.witness
            self.ordering_ = outcome.ordering
            self.witness_ = pcr
            by_vertex = [None] * g.n
            for pos, v in enumerate(outcome.ordering):
                by_vertex[v] = pcr.weights[pos]
            self.weights_ = tuple(by_vertex)
            self.dmin_ = pcr.dmin
            self.dmax_ = pcr.dmax
        else:
            self.ordering_ = self.witness_ = self.weights_ = None
            self.dmin_ = self.dmax_ = None
        return self

    def predict(self, pairs) -> np.ndarray:
        """Whether each ``(u, v)`` lies in the witness window; needs a yes verdict."""
        check_is_fitted(self, "is_star_pcg_")
        if not self.is_star_pcg_:
            raise ValueError("graph is not a star-PCG; there is no witness to evaluate")
        arr = check_pairs(pairs, self.n_vertices_)
        w = self.weights_
        return np.array(
            [u != v and self.dmin_ <= w[u] + w[v] <= self.dmax_ for u, v in arr.tolist()], dtype=bool
        )

    def witness(self) -> StarPCR:
        check_is_fitted(self, "is_star_pcg_")
        if not self.is_star_pcg_:
            raise ValueError("graph is not a star-PCG")
        return self.witness_
