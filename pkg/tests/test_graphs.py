from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from copwin.graphs import (
    QUADRANT,
    Box,
    CoordinateOverflowError,
    FiniteGraph,
    GraphFormatError,
    U64_MAX,
    Vertex,
    induced_subgraph,
    parse_graph,
    path_graph,
    quadrant_adjacent,
    random_connected_graph,
    serialize_graph,
    square_truncation,
    triangular_truncation,
)

coord = st.integers(min_value=0, max_value=200)
vertex = st.tuples(coord, coord).filter(lambda t: t != (0, 0)).map(lambda t: Vertex(*t))


class TestVertex:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            Vertex(-1, 0)

    def test_rejects_beyond_64_bits(self):
        with pytest.raises(CoordinateOverflowError):
            Vertex(U64_MAX + 1, 0)
        Vertex(U64_MAX, 0)  # boundary is fine

    def test_lexicographic_order(self):
        assert Vertex(0, 5) < Vertex(1, 0) < Vertex(1, 1)

    def test_reflection_is_involution(self):
        v = Vertex(3, 7)
        assert v.reflected() == Vertex(7, 3)
        assert v.reflected().reflected() == v


class TestQuadrantAdjacency:
    def test_x_axis_vertices_all_connected(self):
        assert quadrant_adjacent(Vertex(2, 0), Vertex(5, 0))

    def test_strict_quadrant_rule(self):
        assert quadrant_adjacent(Vertex(2, 5), Vertex(4, 4))

    def test_comparable_points_not_adjacent(self):
        assert not quadrant_adjacent(Vertex(1, 1), Vertex(2, 2))

    def test_irreflexive(self):
        assert not quadrant_adjacent(Vertex(4, 4), Vertex(4, 4))
        assert not quadrant_adjacent(Vertex(0, 3), Vertex(0, 3))

    def test_rejects_origin(self):
        with pytest.raises(ValueError):
            quadrant_adjacent(Vertex(0, 0), Vertex(1, 0))

    def test_axis_cross_pairs_adjacent(self):
        assert quadrant_adjacent(Vertex(3, 0), Vertex(0, 2))

    @given(vertex, vertex)
    def test_symmetric(self, u, v):
        assert quadrant_adjacent(u, v) == quadrant_adjacent(v, u)

    @given(vertex, vertex)
    def test_reflection_symmetry(self, u, v):
        assert quadrant_adjacent(u, v) == quadrant_adjacent(u.reflected(), v.reflected())


class TestNeighborsWithin:
    def test_matches_brute_force(self):
        window = Box(0, 0, 12, 12)
        for v in (Vertex(2, 0), Vertex(4, 4), Vertex(0, 3), Vertex(1, 1)):
            brute = [
                Vertex(x, y)
                for x in range(13)
                for y in range(13)
                if (x, y) != (0, 0) and quadrant_adjacent(Vertex(x, y), v)
            ]
            assert QUADRANT.neighbors_within(v, window) == sorted(brute)

    def test_window_offset(self):
        out = QUADRANT.neighbors_within(Vertex(4, 4), Box(5, 0, 7, 3))
        assert out == [Vertex(x, y) for x in (5, 6, 7) for y in (0, 1, 2, 3)]

    def test_unbounded_degree_finitized(self):
        # every vertex with coordinates <= 20 exceeds 1000 neighbors in some window
        for v in [Vertex(x, y) for x in range(21) for y in range(21) if (x, y) != (0, 0)]:
            w = 32
            while len(QUADRANT.neighbors_within(v, Box(0, 0, w, w))) < 1000:
                w *= 2
                assert w <= 4096, f"degree of {v} grows too slowly"


class TestTruncations:
    def test_triangular_counts(self):
        for k in (1, 2, 3, 8):
            g = triangular_truncation(k)
            assert g.n == (k + 1) * (k + 2) // 2 - 1

    def test_triangular_k1(self):
        g = triangular_truncation(1)
        assert g.labels == (Vertex(0, 1), Vertex(1, 0))
        assert g.edge_count == 1

    def test_triangular_k2_edges_by_enumeration(self):
        g = triangular_truncation(2)
        expect = [
            (u, v)
            for u, v in itertools.combinations(range(g.n), 2)
            if quadrant_adjacent(g.labels[u], g.labels[v])
        ]
        assert g.edges() == expect
        apex = g.id_of(Vertex(0, 2))
        assert len(g.neighbors[apex]) == 4  # adjacent to all other four

    def test_square_counts(self):
        assert square_truncation(1).n == 3
        assert square_truncation(2).n == 8

    def test_square_n1_is_disconnected(self):
        g = square_truncation(1)
        assert g.labels == (Vertex(0, 1), Vertex(1, 0), Vertex(1, 1))
        assert g.edges() == [(0, 1)]
        assert g.neighbors[g.id_of(Vertex(1, 1))] == ()

    def test_oracle_explicit_agreement(self):
        g = triangular_truncation(6)
        for i, j in itertools.combinations(range(g.n), 2):
            assert g.adjacent(i, j) == quadrant_adjacent(g.labels[i], g.labels[j])

    def test_rejects_bad_size(self):
        with pytest.raises(ValueError):
            triangular_truncation(0)


class TestInducedSubgraph:
    def test_single_edge(self):
        g = induced_subgraph(QUADRANT, [Vertex(1, 0), Vertex(0, 1)])
        assert g.edges() == [(0, 1)]

    def test_triangle(self):
        g = induced_subgraph(QUADRANT, [Vertex(1, 1), Vertex(2, 0), Vertex(0, 2)])
        assert g.edge_count == 3  # pairwise adjacent

    def test_empty_set_gives_empty_graph(self):
        g = induced_subgraph(QUADRANT, [])
        assert g.n == 0 and g.edges() == []

    def test_foreign_vertex_rejected(self):
        with pytest.raises(ValueError):
            induced_subgraph(QUADRANT, [Vertex(0, 0), Vertex(1, 0)])


class TestGenerators:
    def test_path_shapes(self):
        assert path_graph(1).edge_count == 0
        assert path_graph(2).edge_count == 1
        assert path_graph(5).edge_count == 4

    def test_random_connected_is_connected_and_deterministic(self):
        for seed in range(12):
            g = random_connected_graph(9, 0.3, seed)
            h = random_connected_graph(9, 0.3, seed)
            assert g == h
            seen, stack = {0}, [0]
            while stack:
                for j in g.neighbors[stack.pop()]:
                    if j not in seen:
                        seen.add(j)
                        stack.append(j)
            assert len(seen) == g.n

    def test_random_edge_cases(self):
        assert random_connected_graph(1, 0.5, 3).n == 1
        assert random_connected_graph(3, 1.0, 0).edge_count == 3  # triangle


class TestSerialization:
    def test_round_trip_path(self):
        g = path_graph(5)
        assert parse_graph(serialize_graph(g)) == g

    def test_round_trip_coordinates(self):
        g = triangular_truncation(4)
        assert parse_graph(serialize_graph(g)) == g

    @given(st.integers(min_value=1, max_value=9), st.integers(min_value=0, max_value=10**6))
    @settings(max_examples=40, deadline=None)
    def test_round_trip_random(self, n, seed):
        g = random_connected_graph(n, 0.4, seed)
        assert parse_graph(serialize_graph(g)) == g

    def test_empty_vertices_rejected(self):
        with pytest.raises(GraphFormatError):
            parse_graph('{"version": 1, "vertices": [], "edges": []}')

    def test_duplicate_edge_rejected(self):
        with pytest.raises(GraphFormatError, match="edge 1"):
            parse_graph('{"version": 1, "vertices": ["a", "b"], "edges": [[0, 1], [0, 1]]}')

    def test_unordered_edge_rejected(self):
        with pytest.raises(GraphFormatError, match="i < j"):
            parse_graph('{"version": 1, "vertices": ["a", "b"], "edges": [[1, 0]]}')

    def test_malformed_json_carries_position(self):
        with pytest.raises(GraphFormatError, match="position"):
            parse_graph('{"version": 1, "vertices": [')

    def test_bad_version_rejected(self):
        with pytest.raises(GraphFormatError, match="version"):
            parse_graph('{"version": 2, "vertices": ["a"], "edges": []}')

    def test_self_loop_rejected(self):
        with pytest.raises(GraphFormatError, match="self-loop"):
            FiniteGraph(["a", "b"], [(0, 0)])
