"""Input coercion for the estimator facade and the CLI."""

from __future__ import annotations

from typing import Any

import numpy as np

from .graph import Graph


def check_graph(X: Any) -> Graph:
    """Return ``X`` as a :class:`Graph`.

    Accepts a ``Graph`` or a square symmetric 0/1 adjacency matrix (anything
    ``numpy.asarray`` understands) with a zero diagonal.
    """
    if isinstance(X, Graph):
        return X
    a = np.asarray(X)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {a.shape}")
    if a.size and not np.isin(a, (0, 1)).all():
        raise ValueError("adjacency matrix entries must be 0 or 1")
    a = a.astype(bool)
    if a.diagonal().any():
        raise ValueError("adjacency matrix has a self-loop")
    if not (a == a.T).all():
        raise ValueError("adjacency matrix is not symmetric")
    rows, cols = np.nonzero(np.triu(a, 1))
    return Graph.from_edges(a.shape[0], zip(rows.tolist(), cols.tolist()))


def check_pairs(pairs: Any, n: int) -> np.ndarray:
    """Vertex pairs as an ``(k, 2)`` integer array with entries in ``0..n-1``."""
    arr = np.asarray(pairs)
    if arr.size == 0:
        return np.zeros((0, 2), dtype=int)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"pairs must have shape (k, 2), got {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError("pairs must hold integer vertex ids")
    if arr.min() < 0 or arr.max() >= n:
        raise ValueError(f"vertex id out of range for n={n}")
    return arr.astype(int)


def to_adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int8)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    return a
