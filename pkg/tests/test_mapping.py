import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tempograph import (
    TimeSeries,
    TransitionField,
    community_shapelets,
    selection_to_spans,
    vertex_to_span,
)
from test_netgraph import graph_from_matrix


def field_of(n: int, m: int) -> TransitionField:
    size = -(-n // m)
    return TransitionField(np.zeros((size, size)), segment_len=m, source_len=n, n_bins=2)


class TestVertexToSpan:
    def test_identity_at_m1(self):
        assert vertex_to_span(field_of(96, 1), 10) == (10, 11)

    def test_fig_sized_field(self):
        assert vertex_to_span(field_of(96, 2), 47) == (94, 96)

    def test_truncated_final_segment(self):
        assert vertex_to_span(field_of(97, 2), 48) == (96, 97)

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            vertex_to_span(field_of(10, 2), 5)

    @given(st.integers(2, 500), st.integers(1, 16))
    def test_partition_property(self, n, m):
        field = field_of(n, m)
        spans = [vertex_to_span(field, v) for v in range(field.size)]
        assert spans[0][0] == 0
        assert spans[-1][1] == n
        for (_s0, e0), (s1, _e1) in zip(spans, spans[1:]):
            assert e0 == s1
        assert all(s < e for s, e in spans)


class TestSelectionToSpans:
    def test_adjacent_merge(self):
        assert selection_to_spans(field_of(20, 2), {3, 4}) == [(6, 10)]

    def test_empty_selection(self):
        assert selection_to_spans(field_of(20, 2), set()) == []

    def test_disjoint_preserved(self):
        assert selection_to_spans(field_of(10, 1), {0, 5}) == [(0, 1), (5, 6)]

    def test_duplicates_ignored(self):
        assert selection_to_spans(field_of(10, 1), [2, 2, 3]) == [(2, 4)]

    @given(
        st.integers(2, 60),
        st.integers(1, 7),
        st.sets(st.integers(0, 59)),
    )
    def test_minimal_and_sorted(self, n, m, vertices):
        field = field_of(n, m)
        vertices = {v for v in vertices if v < field.size}
        spans = selection_to_spans(field, vertices)
        for (s0, e0), (s1, e1) in zip(spans, spans[1:]):
            assert e0 < s1  # neither overlapping nor adjacent
        covered = set()
        for s, e in spans:
            covered |= set(range(s, e))
        expected = set()
        for v in vertices:
            s, e = vertex_to_span(field, v)
            expected |= set(range(s, e))
        assert covered == expected

    def test_singleton_round_trip(self):
        field = field_of(97, 4)
        for v in range(field.size):
            assert selection_to_spans(field, {v}) == [vertex_to_span(field, v)]


class TestCommunityShapelets:
    def _graph_with_labels(self, labels, m=1, n=None):
        size = len(labels)
        n = size * m if n is None else n
        graph = graph_from_matrix(np.zeros((size, size)))
        graph.segment_len = m
        graph.source_len = n
        graph.modules_ = np.asarray(labels)
        return graph

    def test_run_length_grouping(self):
        graph = self._graph_with_labels([0, 0, 1, 1, 0])
        series = TimeSeries(np.arange(5, dtype=float), name="demo")
        groups = community_shapelets(graph, series)
        assert [s.span for s in groups[0]] == [(0, 2), (4, 5)]
        assert [s.span for s in groups[1]] == [(2, 4)]
        np.testing.assert_array_equal(groups[1][0].values, [2.0, 3.0])
        assert groups[0][0].origin == "community:0"

    def test_single_module_spans_everything(self):
        graph = self._graph_with_labels([0, 0, 0])
        groups = community_shapelets(graph, TimeSeries([1.0, 2.0, 3.0]))
        assert [s.span for s in groups[0]] == [(0, 3)]

    def test_spans_tile_source(self):
        rng = np.random.default_rng(23)
        labels = rng.integers(0, 3, size=25)
        graph = self._graph_with_labels(labels, m=4, n=99)
        series = TimeSeries(rng.normal(size=99))
        groups = community_shapelets(graph, series)
        covered = []
        for shapelets in groups.values():
            covered.extend(s.span for s in shapelets)
        covered.sort()
        assert covered[0][0] == 0 and covered[-1][1] == 99
        for (_, e0), (s1, _) in zip(covered, covered[1:]):
            assert e0 == s1

    def test_requires_modules(self):
        graph = graph_from_matrix(np.zeros((3, 3)))
        with pytest.raises(ValueError, match="module labels"):
            community_shapelets(graph, TimeSeries([1.0, 2.0, 3.0]))

    def test_length_mismatch(self):
        graph = self._graph_with_labels([0, 1])
        with pytest.raises(ValueError, match="length"):
            community_shapelets(graph, TimeSeries([1.0, 2.0, 3.0]))
