"""The inverse operation: vertices, selections and communities mapped back to
raw-signal subsequences."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import TimeSeries
from .netgraph import NetworkGraph


@dataclass(frozen=True)
class Shapelet:
    """A raw subsequence recovered from a graph structure.

    ``span`` is a half-open [start, end) window of source time indices;
    ``origin`` names the structure it came from: ``community:<label>``,
    ``selection`` or ``anomaly``.
    """

    source: str
    span: tuple[int, int]
    values: np.ndarray
    origin: str

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "span": [self.span[0], self.span[1]],
            "values": [float(v) for v in self.values],
            "origin": self.origin,
        }


def vertex_to_span(field_or_graph, vertex: int) -> tuple[int, int]:
    """The [start, end) sample window covered by one vertex.

    Works on anything exposing ``segment_len``, ``source_len`` and ``size``
    (both :class:`TransitionField` and :class:`NetworkGraph` do). The final
    vertex's window is truncated at ``source_len``, so the windows of all
    vertices partition ``[0, source_len)``.
    """
    size = field_or_graph.size
    if not 0 <= vertex < size:
        raise ValueError(f"vertex {vertex} out of range [0, {size})")
    m = field_or_graph.segment_len
    n = field_or_graph.source_len
    return (vertex * m, min((vertex + 1) * m, n))


def selection_to_spans(field_or_graph, vertices) -> list[tuple[int, int]]:
    """Merge the spans of selected vertices into a minimal sorted list.

    Adjacent and overlapping spans are coalesced; the result never holds two
    spans that touch. An empty selection gives an empty list.
    """
    unique = sorted(set(int(v) for v in vertices))
    merged: list[list[int]] = []
    for v in unique:
        start, end = vertex_to_span(field_or_graph, v)
        if merged and start <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], end)
        else:
            merged.append([start, end])
    return [(s, e) for s, e in merged]


def span_values(series, span: tuple[int, int]) -> np.ndarray:
    values = series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=float)
    return values[span[0]:span[1]].copy()


def community_shapelets(graph: NetworkGraph, series) -> dict[int, list[Shapelet]]:
    """Cut the series at community boundaries: per module, every maximal run
    of consecutive same-module vertices becomes one shapelet.

    The union of all returned spans is exactly ``[0, source_len)``.
    """
    if graph.modules_ is None:
        raise ValueError("graph has no module labels; run annotate() or louvain() first")
    values = series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=float)
    name = series.name if isinstance(series, TimeSeries) else ""
    if values.size != graph.source_len:
        raise ValueError(
            f"series length {values.size} differs from the graph's source length "
            f"{graph.source_len}"
        )
    labels = graph.modules_
    result: dict[int, list[Shapelet]] = {int(lab): [] for lab in np.unique(labels)}
    run_start = 0
    for v in range(1, graph.n_vertices + 1):
        if v == graph.n_vertices or labels[v] != labels[run_start]:
            start = vertex_to_span(graph, run_start)[0]
            end = vertex_to_span(graph, v - 1)[1]
            label = int(labels[run_start])
            result[label].append(
                Shapelet(
                    source=name,
                    span=(start, end),
                    values=values[start:end].copy(),
                    origin=f"community:{label}",
                )
            )
            run_start = v
    return result
