"""Weighted-network interpretation of a transition field: graph construction,
PageRank, Louvain communities, clustering coefficients and summary statistics."""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from ._validation import check_matrix
from .encode import TransitionField
from .exceptions import NumericError

#: Statistic names in the report column order.
STAT_NAMES = (
    "avg_degree",
    "avg_weighted_degree",
    "diameter",
    "density",
    "modularity",
    "community_count",
    "avg_clustering_coefficient",
    "avg_path_length",
)


@dataclass
class NetworkGraph:
    """A directed weighted graph over the field's vertices.

    ``weights[i, j]`` is the edge weight for ``i -> j``; entries at or below
    the construction threshold and the main diagonal are zero. Self-loop
    weights are kept per vertex in ``self_weights`` but are not edges.
    Analytics results are cached on the instance by :func:`annotate`.
    """

    weights: np.ndarray
    self_weights: np.ndarray
    segment_len: int
    source_len: int
    threshold: float = 0.0
    pagerank_: np.ndarray | None = dataclass_field(default=None, repr=False)
    modules_: np.ndarray | None = dataclass_field(default=None, repr=False)
    modularity_: float | None = dataclass_field(default=None, repr=False)
    clustering_: np.ndarray | None = dataclass_field(default=None, repr=False)

    @property
    def n_vertices(self) -> int:
        return int(self.weights.shape[0])

    @property
    def size(self) -> int:
        # mirror of TransitionField.size so span helpers accept either
        return self.n_vertices

    def symmetrized(self) -> np.ndarray:
        """Undirected weight matrix: weight(i,j) + weight(j,i)."""
        return self.weights + self.weights.T

    def adjacency_bool(self) -> np.ndarray:
        """Unweighted symmetrized adjacency without self-loops."""
        sym = (self.weights > 0) | (self.weights.T > 0)
        np.fill_diagonal(sym, False)
        return sym

    def edge_list(self) -> list[tuple[int, int, float]]:
        """Directed edges sorted by (source, target)."""
        src, dst = np.nonzero(self.weights)
        return [(int(i), int(j), float(self.weights[i, j])) for i, j in zip(src, dst)]


def build_graph(field: TransitionField, threshold: float = 0.0) -> NetworkGraph:
    """Interpret a field as a directed graph.

    Every off-diagonal entry strictly greater than ``threshold`` becomes an
    edge with that weight; the diagonal is recorded as per-vertex
    self-transition weight, not as edges.
    """
    if threshold < 0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    matrix = check_matrix(field.matrix, "field matrix")
    weights = np.where(matrix > threshold, matrix, 0.0)
    self_weights = np.diag(matrix).copy()
    np.fill_diagonal(weights, 0.0)
    return NetworkGraph(
        weights=weights,
        self_weights=self_weights,
        segment_len=field.segment_len,
        source_len=field.source_len,
        threshold=float(threshold),
    )


def pagerank(graph: NetworkGraph, damping: float = 0.85, tol: float = 1e-12,
             max_iter: int = 500) -> np.ndarray:
    """Weighted PageRank by power iteration.

    Out-weights are row-normalized into transition probabilities; dangling
    vertices redistribute their mass uniformly. Iteration stops when the L1
    change drops below ``tol``.

    Raises
    ------
    NumericError
        If the iteration has not converged after ``max_iter`` rounds; the
        message carries the last residual.
    """
    if not 0.0 < damping < 1.0:
        raise ValueError(f"damping must lie in (0, 1), got {damping}")
    n = graph.n_vertices
    if n == 0:
        raise ValueError("pagerank needs a nonempty graph")
    out = graph.weights.sum(axis=1)
    dangling = out <= 0
    transition = np.divide(
        graph.weights, out[:, None], out=np.zeros_like(graph.weights), where=~dangling[:, None]
    )
    scores = np.full(n, 1.0 / n)
    teleport = (1.0 - damping) / n
    for _ in range(max_iter):
        updated = damping * (scores @ transition + scores[dangling].sum() / n) + teleport
        residual = float(np.abs(updated - scores).sum())
        scores = updated
        if residual < tol:
            return scores
    raise NumericError(
        f"pagerank did not converge in {max_iter} iterations (L1 residual {residual:.3e})"
    )


def _compact_labels(labels: np.ndarray) -> np.ndarray:
    """Relabel to consecutive integers ordered by first occurrence."""
    mapping: dict[int, int] = {}
    out = np.empty_like(labels)
    for i, lab in enumerate(labels):
        out[i] = mapping.setdefault(int(lab), len(mapping))
    return out


def _group_matrix(matrix: np.ndarray, labels: np.ndarray, n_groups: int) -> np.ndarray:
    """Sum matrix entries into group blocks: out[c, d] = sum over i in c, j in d."""
    rows = np.zeros((n_groups, matrix.shape[1]))
    np.add.at(rows, labels, matrix)
    grouped = np.zeros((n_groups, n_groups))
    np.add.at(grouped.T, labels, rows.T)
    return grouped


def partition_modularity(sym_weights: np.ndarray, labels, resolution: float = 1.0) -> float:
    """Newman modularity of a labeling on a symmetric weight matrix.

    Uses the 2m convention: ``sym_weights`` counts every undirected edge in
    both orders, so its total is twice the graph weight.
    """
    sym_weights = check_matrix(sym_weights, "sym_weights")
    labels = _compact_labels(np.asarray(labels, dtype=np.int64))
    total = float(sym_weights.sum())
    if total <= 0:
        return 0.0
    n_groups = int(labels.max()) + 1
    strength = sym_weights.sum(axis=1)
    sigma_tot = np.bincount(labels, weights=strength, minlength=n_groups)
    sigma_in = np.diag(_group_matrix(sym_weights, labels, n_groups))
    return float(np.sum(sigma_in / total - resolution * (sigma_tot / total) ** 2))


def _local_moves(matrix: np.ndarray, resolution: float, total: float,
                 rng: np.random.Generator, max_sweeps: int = 100):
    """One Louvain level: greedy vertex moves until no move improves."""
    n = matrix.shape[0]
    strength = matrix.sum(axis=1)
    labels = np.arange(n)
    sigma_tot = strength.copy()
    improved = False
    for _ in range(max_sweeps):
        moved = False
        for v in rng.permutation(n):
            current = labels[v]
            row = matrix[v].copy()
            row[v] = 0.0
            to_comm = np.bincount(labels, weights=row, minlength=n)
            sigma_tot[current] -= strength[v]
            scale = resolution * strength[v] / total
            stay_gain = to_comm[current] - scale * sigma_tot[current]
            candidates = np.flatnonzero(to_comm > 0)
            best, best_gain = current, stay_gain
            if candidates.size:
                gains = to_comm[candidates] - scale * sigma_tot[candidates]
                pick = int(np.argmax(gains))
                # strict improvement with a scale-tracking tolerance
                if gains[pick] > best_gain + 1e-12 * (1.0 + strength[v]):
                    best, best_gain = int(candidates[pick]), gains[pick]
            labels[v] = best
            sigma_tot[best] += strength[v]
            if best != current:
                moved = improved = True
        if not moved:
            break
    return _compact_labels(labels), improved


def louvain(graph_or_matrix, resolution: float = 1.0, seed: int = 0):
    """Louvain community detection on the symmetrized weighted graph.

    Deterministic for a fixed seed: the vertex visit order is drawn from a
    seeded generator and ties prefer the lowest community index.

    Parameters
    ----------
    graph_or_matrix : NetworkGraph or square array
        A graph (symmetrized internally) or an already symmetric weight
        matrix whose diagonal counts self weight twice.
    resolution : float
        Modularity resolution; 1.0 is the classic definition.
    seed : int
        Visit-order seed.

    Returns
    -------
    (np.ndarray, float)
        Module label per vertex (consecutive ints ordered by first
        appearance) and the partition's modularity at ``resolution``.
        An edgeless graph yields singleton modules and modularity 0.
    """
    if isinstance(graph_or_matrix, NetworkGraph):
        sym = graph_or_matrix.symmetrized()
    else:
        sym = check_matrix(graph_or_matrix, "weights").copy()
    if np.any(sym < 0):
        raise ValueError("louvain needs non-negative weights")
    n = sym.shape[0]
    total = float(sym.sum())
    if total <= 0:
        return np.arange(n, dtype=np.int64), 0.0

    rng = np.random.default_rng(seed)
    membership = np.arange(n, dtype=np.int64)
    level = sym
    while True:
        labels, improved = _local_moves(level, resolution, total, rng)
        membership = labels[membership]
        n_groups = int(labels.max()) + 1
        if not improved or n_groups == level.shape[0]:
            break
        level = _group_matrix(level, labels, n_groups)
    final = _compact_labels(membership)
    return final, partition_modularity(sym, final, resolution=resolution)


def clustering_coefficients(graph: NetworkGraph) -> np.ndarray:
    """Local clustering coefficient per vertex on the unweighted
    symmetrized graph; vertices of degree < 2 score 0."""
    adj = graph.adjacency_bool().astype(np.float64)
    degrees = adj.sum(axis=1)
    triangles = ((adj @ adj) * adj).sum(axis=1) / 2.0
    pairs = degrees * (degrees - 1) / 2.0
    return np.divide(triangles, pairs, out=np.zeros_like(pairs), where=pairs > 0)


@dataclass(frozen=True)
class NetworkStats:
    """The eight-column network statistics summary."""

    avg_degree: float
    avg_weighted_degree: float
    diameter: float
    density: float
    modularity: float
    community_count: int
    avg_clustering_coefficient: float
    avg_path_length: float

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in STAT_NAMES}

    def as_vector(self) -> np.ndarray:
        return np.array([float(getattr(self, name)) for name in STAT_NAMES])


def _path_stats(adj: np.ndarray) -> tuple[float, float]:
    """Diameter and average path length over the largest connected component,
    unweighted BFS distances; a component of one vertex yields (0, 0)."""
    n = adj.shape[0]
    if n == 0:
        return 0.0, 0.0
    sparse = csr_matrix(adj)
    n_comp, comp_labels = connected_components(sparse, directed=False)
    largest = np.argmax(np.bincount(comp_labels, minlength=n_comp))
    members = np.flatnonzero(comp_labels == largest)
    if members.size < 2:
        return 0.0, 0.0
    dists = shortest_path(sparse, method="D", unweighted=True,
                          directed=False, indices=members)[:, members]
    off_diag = dists[~np.eye(members.size, dtype=bool)]
    return float(off_diag.max()), float(off_diag.mean())


def graph_stats(graph: NetworkGraph, resolution: float = 1.0, seed: int = 0) -> NetworkStats:
    """Compute the statistics suite for a graph.

    Degree and path statistics use the unweighted symmetrized simple graph;
    weighted degree and density use the directed edge set; modularity and
    community count come from :func:`louvain` at the given resolution.
    """
    n = graph.n_vertices
    adj = graph.adjacency_bool()
    directed_edges = int(np.count_nonzero(graph.weights))
    density = directed_edges / (n * (n - 1)) if n > 1 else 0.0
    labels, modularity = louvain(graph, resolution=resolution, seed=seed)
    diameter, apl = _path_stats(adj)
    return NetworkStats(
        avg_degree=float(adj.sum() / n) if n else 0.0,
        avg_weighted_degree=float(graph.weights.sum(axis=1).mean()) if n else 0.0,
        diameter=diameter,
        density=float(density),
        modularity=float(modularity),
        community_count=int(labels.max()) + 1 if n else 0,
        avg_clustering_coefficient=float(clustering_coefficients(graph).mean()) if n else 0.0,
        avg_path_length=apl,
    )


def annotate(graph: NetworkGraph, damping: float = 0.85, resolution: float = 1.0,
             seed: int = 0) -> NetworkGraph:
    """Populate the per-vertex analytics caches used by exports and reports."""
    graph.pagerank_ = pagerank(graph, damping=damping)
    graph.modules_, graph.modularity_ = louvain(graph, resolution=resolution, seed=seed)
    graph.clustering_ = clustering_coefficients(graph)
    return graph


def vertex_spans(graph_or_field) -> list[tuple[int, int]]:
    """The [start, end) sample span of each vertex, tiling [0, source_len)."""
    m, n = graph_or_field.segment_len, graph_or_field.source_len
    return [(i * m, min((i + 1) * m, n)) for i in range(graph_or_field.size)]


def graph_document(graph: NetworkGraph, resolution: float = 1.0, seed: int = 0,
                   damping: float = 0.85, stats: NetworkStats | None = None) -> dict:
    """The JSON-ready document consumed by the CLI artifacts, service and UI."""
    if graph.pagerank_ is None or graph.modules_ is None or graph.clustering_ is None:
        annotate(graph, damping=damping, resolution=resolution, seed=seed)
    if stats is None:
        stats = graph_stats(graph, resolution=resolution, seed=seed)
    spans = vertex_spans(graph)
    nodes = [
        {
            "id": i,
            "time_index": i,
            "span": [spans[i][0], spans[i][1]],
            "pagerank": float(graph.pagerank_[i]),
            "module": int(graph.modules_[i]),
            "cc": float(graph.clustering_[i]),
            "self_weight": float(graph.self_weights[i]),
        }
        for i in range(graph.n_vertices)
    ]
    edges = [
        {"source": s, "target": t, "weight": w} for s, t, w in graph.edge_list()
    ]
    return {
        "directed": True,
        "n_vertices": graph.n_vertices,
        "segment_len": graph.segment_len,
        "source_len": graph.source_len,
        "threshold": graph.threshold,
        "nodes": nodes,
        "edges": edges,
        "stats": stats.as_dict(),
    }


def write_graphml(graph: NetworkGraph, path) -> None:
    """Write the annotated graph as GraphML for third-party tools."""
    if graph.pagerank_ is None or graph.modules_ is None or graph.clustering_ is None:
        annotate(graph)
    spans = vertex_spans(graph)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="time_index" for="node" attr.name="time_index" attr.type="int"/>',
        '  <key id="span_start" for="node" attr.name="span_start" attr.type="int"/>',
        '  <key id="span_end" for="node" attr.name="span_end" attr.type="int"/>',
        '  <key id="pagerank" for="node" attr.name="pagerank" attr.type="double"/>',
        '  <key id="module" for="node" attr.name="module" attr.type="int"/>',
        '  <key id="cc" for="node" attr.name="cc" attr.type="double"/>',
        '  <key id="weight" for="edge" attr.name="weight" attr.type="double"/>',
        '  <graph edgedefault="directed">',
    ]
    for i in range(graph.n_vertices):
        lines.append(f'    <node id="n{i}">')
        lines.append(f'      <data key="time_index">{i}</data>')
        lines.append(f'      <data key="span_start">{spans[i][0]}</data>')
        lines.append(f'      <data key="span_end">{spans[i][1]}</data>')
        lines.append(f'      <data key="pagerank">{float(graph.pagerank_[i])!r}</data>')
        lines.append(f'      <data key="module">{int(graph.modules_[i])}</data>')
        lines.append(f'      <data key="cc">{float(graph.clustering_[i])!r}</data>')
        lines.append("    </node>")
    for s, t, w in graph.edge_list():
        lines.append(f'    <edge source="n{s}" target="n{t}">')
        lines.append(f'      <data key="weight">{w!r}</data>')
        lines.append("    </edge>")
    lines += ["  </graph>", "</graphml>", ""]
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines))
