"""Anomaly candidates: the union of weakly-bundled vertices (H) and the
lowest-clustering-coefficient vertices (S)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mapping import selection_to_spans
from .netgraph import NetworkGraph, clustering_coefficients, louvain


@dataclass(frozen=True)
class AnomalyReport:
    """Candidate vertices with their inverse-mapped time spans.

    ``union`` is exactly ``H | S``; ``spans`` the merged windows of the
    union; ``scores`` the per-vertex isolation score. ``clamped`` is set
    when a requested k exceeded the vertex count.
    """

    H: tuple[int, ...]
    S: tuple[int, ...]
    union: tuple[int, ...]
    spans: tuple[tuple[int, int], ...]
    scores: np.ndarray
    clamped: bool = False

    def to_dict(self) -> dict:
        return {
            "H": list(self.H),
            "S": list(self.S),
            "union": list(self.union),
            "spans": [[s, e] for s, e in self.spans],
            "scores": [float(v) for v in self.scores],
            "clamped": self.clamped,
        }


def isolation_scores(graph: NetworkGraph, resolution: float = 1.0, seed: int = 0) -> np.ndarray:
    """How weakly each vertex is bundled within its own module.

    The score is the symmetrized edge weight leaving the vertex's module
    divided by the vertex's total weight; a vertex with no weight at all
    scores 1 (maximally isolated). Module labels come from the graph's
    cache when present, else from a fresh Louvain run.
    """
    labels = graph.modules_
    if labels is None:
        labels, _ = louvain(graph, resolution=resolution, seed=seed)
    sym = graph.symmetrized()
    total = sym.sum(axis=1)
    same_module = labels[:, None] == labels[None, :]
    inside = (sym * same_module).sum(axis=1)
    outside = total - inside
    return np.divide(outside, total, out=np.ones_like(total), where=total > 0)


def default_k(n_vertices: int) -> int:
    """Default candidate-set size: 5 percent of the vertices, at least 1."""
    return max(1, math.ceil(0.05 * n_vertices))


def _smallest(values: np.ndarray, k: int) -> list[int]:
    """Indices of the k smallest values, ties broken by lower index."""
    order = np.lexsort((np.arange(values.size), values))
    return [int(i) for i in order[:k]]


def detect(graph: NetworkGraph, k_h: int | None = None, k_s: int | None = None,
           resolution: float = 1.0, seed: int = 0,
           chosen_h=None) -> AnomalyReport:
    """Select anomaly candidates as the union of two vertex sets.

    ``H`` holds the ``k_h`` highest isolation scores (or, when ``chosen_h``
    is given, exactly those vertices: the human-in-the-loop path) and ``S``
    the ``k_s`` lowest clustering coefficients. Ties prefer the lower vertex
    index, so reports are deterministic. Requests larger than the vertex
    count are clamped and flagged.
    """
    n = graph.n_vertices
    k_h = default_k(n) if k_h is None else int(k_h)
    k_s = default_k(n) if k_s is None else int(k_s)
    if k_h < 0 or k_s < 0:
        raise ValueError(f"k_h and k_s must be >= 0, got {k_h}, {k_s}")
    clamped = k_h > n or k_s > n
    k_h, k_s = min(k_h, n), min(k_s, n)

    scores = isolation_scores(graph, resolution=resolution, seed=seed)
    if chosen_h is not None:
        chosen = sorted(set(int(v) for v in chosen_h))
        for v in chosen:
            if not 0 <= v < n:
                raise ValueError(f"selected vertex {v} out of range [0, {n})")
        h_set = chosen
    else:
        h_set = sorted(_smallest(-scores, k_h))
    coefficients = clustering_coefficients(graph)
    s_set = sorted(_smallest(coefficients, k_s))

    union = sorted(set(h_set) | set(s_set))
    spans = selection_to_spans(graph, union)
    return AnomalyReport(
        H=tuple(h_set),
        S=tuple(s_set),
        union=tuple(union),
        spans=tuple(spans),
        scores=scores,
        clamped=clamped,
    )
