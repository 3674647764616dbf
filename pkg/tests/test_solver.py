from __future__ import annotations

import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from copwin.graphs import (
    QUADRANT,
    FiniteGraph,
    Vertex,
    path_graph,
    random_connected_graph,
    triangular_truncation,
)
from copwin.solver import (
    ROBBER_WIN,
    CaptureTable,
    axis_diagonal_order,
    cop_first_time,
    dismantling_order,
    find_dominated_vertex,
    is_finite,
    solve_capture_times,
    solve_capture_times_naive,
    verify_construction_order,
)


def cycle(n):
    return FiniteGraph([f"v{i}" for i in range(n)], [(i, (i + 1) % n) if i + 1 < n else (0, i) for i in range(n)])


class TestSolveExamples:
    def test_p5_capture_time(self):
        res = solve_capture_times(path_graph(5))
        assert res.best_capture_time == 2
        assert res.best_cop_start() == 2  # the center

    def test_single_vertex(self):
        res = solve_capture_times(FiniteGraph(["only"], []))
        assert res.best_capture_time == 0
        assert res.copwin

    def test_c4_robber_win(self):
        res = solve_capture_times(cycle(4))
        assert not res.copwin
        assert all(
            res.table.values[u][v] == ROBBER_WIN
            for u in range(4)
            for v in range(4)
            if u != v
        )

    def test_triangular_k2_values(self):
        g = triangular_truncation(2)
        res = solve_capture_times(g)
        assert res.table.value(g.id_of(Vertex(1, 1)), g.id_of(Vertex(1, 0))) == 2
        assert res.best_capture_time == 1
        assert g.labels[res.best_cop_start()] == Vertex(0, 2)

    def test_diagonal_is_zero_and_value_one_is_domination(self):
        g = random_connected_graph(7, 0.4, 5)
        table = solve_capture_times(g).table
        closed = [set(g.closed_neighbors(i)) for i in range(g.n)]
        for u in range(g.n):
            assert table.value(u, u) == 0
            for v in range(g.n):
                dominated = u != v and closed[u] <= closed[v]
                assert (table.value(u, v) == 1) == dominated

    def test_disconnected_graph_solves_to_robber_wins(self):
        g = FiniteGraph(["a", "b", "c"], [(0, 1)])
        table = solve_capture_times(g).table
        assert not table.copwin
        assert table.value(2, 0) == ROBBER_WIN
        assert table.value(0, 1) == 1

    def test_empty_graph_rejected(self):
        from copwin.graphs import induced_subgraph

        with pytest.raises(ValueError):
            solve_capture_times(induced_subgraph(QUADRANT, []))

    def test_fixed_point_equation(self):
        # for u != v: value(u,v) = 1 + max over x in N[u] of
        # min over y in N[v] of value(x,y), robber-win absorbing
        for g in (path_graph(6), cycle(5), triangular_truncation(3),
                  random_connected_graph(8, 0.3, 17)):
            table = solve_capture_times(g).table
            for u in range(g.n):
                for v in range(g.n):
                    if u == v:
                        continue
                    best_over_robber = max(
                        min(table.value(x, y) for y in g.closed_neighbors(v))
                        for x in g.closed_neighbors(u)
                    )
                    expect = best_over_robber + 1 if is_finite(best_over_robber) else ROBBER_WIN
                    assert table.value(u, v) == expect, (g.name, u, v)


class TestOracleAgreement:
    def test_p5_agreement(self):
        g = path_graph(5)
        fast = solve_capture_times(g).table
        slow = solve_capture_times_naive(g)
        assert fast.values == slow.values
        assert fast.stages == slow.stages

    def test_naive_stage_equals_value(self):
        table = solve_capture_times_naive(path_graph(7))
        finite = [x for row in table.values for x in row if is_finite(x)]
        assert table.stages == max(finite)

    @given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=10**6))
    @settings(max_examples=60, deadline=None)
    def test_agreement_on_random_graphs(self, n, seed):
        g = random_connected_graph(n, 0.35, seed)
        fast = solve_capture_times(g).table
        slow = solve_capture_times_naive(g)
        assert fast.values == slow.values

    def test_agreement_on_mid_size_truncation_exercises_batch_path(self):
        g = triangular_truncation(10)  # 65 vertices: batch solver path
        fast = solve_capture_times(g).table
        slow = solve_capture_times_naive(g)
        assert fast.values == slow.values

    def test_monotone_stages(self):
        # pairs entering at stage t were not related at any earlier stage, and
        # every related pair stays related: values are unique and finite ones
        # partition by first-entry stage
        g = random_connected_graph(8, 0.3, 11)
        table = solve_capture_times_naive(g)
        n = g.n
        closed = [g.closed_neighbors(i) for i in range(n)]
        for u in range(n):
            for v in range(n):
                t = table.value(u, v)
                if not is_finite(t) or t == 0:
                    continue
                # entering at stage t means the quantifier held against stage t-1
                assert all(
                    any(
                        is_finite(table.value(x, y)) and table.value(x, y) <= t - 1
                        for y in closed[v]
                    )
                    for x in closed[u]
                )


class TestCopFirst:
    def test_same_vertex(self):
        table = solve_capture_times(path_graph(3)).table
        assert cop_first_time(table, 1, 1) == 0

    def test_p3_cop_center(self):
        table = solve_capture_times(path_graph(3)).table
        assert cop_first_time(table, 0, 1) == 1  # cop steps onto the robber

    def test_p5_far_ends(self):
        table = solve_capture_times(path_graph(5)).table
        assert cop_first_time(table, 4, 0) == 4

    def test_formula_holds_everywhere(self):
        g = random_connected_graph(7, 0.3, 2)
        table = solve_capture_times(g).table
        for u in range(g.n):
            for v in range(g.n):
                expect = (
                    0
                    if u == v
                    else 1 + min(table.value(u, y) for y in g.closed_neighbors(v))
                )
                got = cop_first_time(table, u, v)
                if u != v and not is_finite(expect):
                    assert got == ROBBER_WIN
                else:
                    assert got == expect
                if u != v and is_finite(table.value(u, v)):
                    assert got <= 1 + table.value(u, v)


class TestDomination:
    def test_p2_endpoints_dominate_each_other(self):
        assert find_dominated_vertex(path_graph(2)) == (0, 1)

    def test_c4_has_none(self):
        assert find_dominated_vertex(cycle(4)) is None

    def test_triangular_k2_apex_dominates(self):
        g = triangular_truncation(2)
        apex = g.id_of(Vertex(0, 2))
        closed = [set(g.closed_neighbors(i)) for i in range(g.n)]
        for i in range(g.n):
            if i != apex:
                assert closed[i] <= closed[apex]
        # the lexicographically first dominated vertex is (0,1)
        assert find_dominated_vertex(g) == (g.id_of(Vertex(0, 1)), apex)


class TestDismantling:
    def test_p5_full_order(self):
        order = dismantling_order(path_graph(5))
        assert order is not None and len(order) == 4

    def test_c4_absent(self):
        assert dismantling_order(cycle(4)) is None

    def test_truncations_dismantlable_match_solver(self):
        for k in range(1, 9):
            g = triangular_truncation(k)
            assert (dismantling_order(g) is not None) == solve_capture_times(g).copwin

    def test_characterization_on_random_graphs(self):
        for seed in range(40):
            g = random_connected_graph(3 + seed % 6, 0.35, seed)
            assert (dismantling_order(g) is not None) == solve_capture_times(g).copwin


class TestConstructionOrder:
    def test_single_vertex_base_case(self):
        assert verify_construction_order(QUADRANT, [Vertex(1, 0)]).ok

    def test_reference_prefix_with_dominators(self):
        order = [Vertex(1, 0), Vertex(0, 1), Vertex(0, 2), Vertex(1, 1)]
        check = verify_construction_order(QUADRANT, order)
        assert check.ok
        assert check.dominators[3] == Vertex(0, 2)  # (1,1) is dominated by (0,2)

    def test_reported_dominator_for_2_0(self):
        order = axis_diagonal_order(2)
        check = verify_construction_order(QUADRANT, order)
        assert check.ok
        assert check.dominators[order.index(Vertex(2, 0))] == Vertex(0, 2)

    def test_invalid_pair_fails_at_index(self):
        check = verify_construction_order(QUADRANT, [Vertex(1, 0), Vertex(1, 1)])
        assert not check.ok
        assert check.failure_index == 1

    def test_duplicate_rejected(self):
        with pytest.raises(ValueError):
            verify_construction_order(QUADRANT, [Vertex(1, 0), Vertex(1, 0)])

    def test_foreign_vertex_rejected(self):
        with pytest.raises(ValueError):
            verify_construction_order(QUADRANT, [Vertex(0, 0)])

    def test_axis_diagonal_order_prefix_and_length(self):
        order = axis_diagonal_order(4)
        assert order[:5] == [Vertex(1, 0), Vertex(0, 1), Vertex(0, 2), Vertex(1, 1), Vertex(2, 0)]
        assert order[5:9] == [Vertex(0, 3), Vertex(1, 2), Vertex(2, 1), Vertex(3, 0)]
        for k in (1, 2, 3, 6, 10):
            assert len(axis_diagonal_order(k)) == (k + 1) * (k + 2) // 2 - 1

    def test_axis_diagonal_order_is_valid_construction(self):
        for k in (1, 2, 5, 9):
            assert verify_construction_order(QUADRANT, axis_diagonal_order(k)).ok

    def test_order_covers_truncation(self):
        g = triangular_truncation(5)
        assert sorted(axis_diagonal_order(5)) == list(g.labels)


class TestTableIO:
    def test_cache_round_trip(self, tmp_path):
        g = triangular_truncation(3)
        table = solve_capture_times(g).table
        path = tmp_path / "cache.json"
        table.write_cache(str(path))
        loaded = CaptureTable.read_cache(str(path), g)
        assert loaded is not None
        assert loaded.values == table.values
        assert loaded.stages == table.stages

    def test_cache_rejects_other_graph(self, tmp_path):
        table = solve_capture_times(path_graph(4)).table
        path = tmp_path / "cache.json"
        table.write_cache(str(path))
        assert CaptureTable.read_cache(str(path), path_graph(5)) is None

    def test_cache_dict_uses_sentinel(self):
        doc = solve_capture_times(FiniteGraph(["a", "b", "c"], [(0, 1)])).table.to_cache_dict()
        assert -1 in doc["eta"]
        assert doc["copwin"] is False
        assert doc["eta_G"] == -1

    def test_csv_has_labels(self):
        import csv

        g = triangular_truncation(2)
        out = io.StringIO()
        solve_capture_times(g).table.write_csv(out)
        rows = list(csv.reader(io.StringIO(out.getvalue())))
        assert rows[0][1:] == ["(0,1)", "(0,2)", "(1,0)", "(1,1)", "(2,0)"]
        assert rows[1][0] == "(0,1)" and rows[1][1] == "0"
        assert rows[4][0] == "(1,1)" and rows[4][3] == "2"


class TestPolicies:
    def test_policy_moves_are_legal(self):
        g = triangular_truncation(4)
        res = solve_capture_times(g)
        for u in range(g.n):
            for v in range(g.n):
                assert res.cop_policy[u][v] in g.closed_neighbors(v)
                assert res.robber_policy[u][v] in g.closed_neighbors(u)

    def test_cop_policy_achieves_value(self):
        g = triangular_truncation(3)
        res = solve_capture_times(g)
        table = res.table
        for u in range(g.n):
            for v in range(g.n):
                if u == v or not is_finite(table.value(u, v)):
                    continue
                # after the robber's best reply the value drops by one per cop move
                x = res.robber_policy[u][v]
                if x == v:
                    continue  # value 0 transition
                y = res.cop_policy[x][v]
                assert table.value(x, y) <= table.value(u, v) - 1 or x == y
