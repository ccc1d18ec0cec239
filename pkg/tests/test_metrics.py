"""Exact route tables, stretch factors, weights, degrees, and the
closed-form bound evaluations."""

import math

import pytest

from conespan.geometry import build_udg, cone_of_nodes
from conespan.instances import gen_figure6, gen_uniform
from conespan.metrics import (
    compute_bounds,
    degree_stats,
    length_stretch,
    mst_weight,
    power_stretch,
    shortest_paths,
    total_weight,
    weight_report,
)
from conespan.topology import build, yao_step

networkx = pytest.importorskip("networkx")


def to_nx(graph, mode="length", beta=2.0):
    pts = graph.points
    gx = networkx.Graph()
    gx.add_nodes_from(pts.ids)
    if hasattr(graph, "undirected_edges"):
        edges = graph.undirected_edges()
    else:
        edges = graph.edges
    for u, v in edges:
        w = pts.dist(u, v)
        gx.add_edge(u, v, weight=w if mode == "length" else w**beta)
    return gx


class TestShortestPaths:
    def test_single_edge(self):
        g = build_udg(gen_figure6(2), 1.0)
        table = shortest_paths(g)
        assert table.get(0, 1) == 1.0
        assert table.get(0, 0) == 0.0

    def test_matrix_and_per_source_agree(self, corpus):
        for g in corpus:
            a = shortest_paths(g, method="matrix")
            b = shortest_paths(g, method="per-source")
            assert max(
                abs(x - y) for x, y in zip(a.flat, b.flat)
            ) <= 1e-9

    def test_agrees_with_external_library(self, corpus):
        g = corpus[1]
        for mode in ("length", "power"):
            table = shortest_paths(g, mode=mode)
            ref = dict(
                networkx.all_pairs_dijkstra_path_length(to_nx(g, mode), weight="weight")
            )
            for u in g.points.ids:
                for v in g.points.ids:
                    expected = ref[u].get(v, math.inf)
                    assert table.get(u, v) == pytest.approx(expected, abs=1e-9)

    def test_disconnected_pairs_are_infinite(self):
        from conespan.geometry import PointSet

        pts = PointSet([(0, 0.0, 0.0), (1, 0.5, 0.0), (2, 9.0, 9.0)])
        table = shortest_paths(build_udg(pts, 1.0))
        assert table.get(0, 2) == math.inf
        assert table.get(0, 1) == 0.5

    def test_power_mode_squares_edge_lengths(self, three_udg):
        table = shortest_paths(three_udg, mode="power", beta=2.0)
        pts = three_udg.points
        # the direct hop is in range, so the squared direct length is an
        # upper bound; multi-hop routes can only help
        for u, v in three_udg.edges:
            assert table.get(u, v) <= pts.dist(u, v) ** 2 + 1e-12

    def test_unknown_mode_and_method_rejected(self, three_udg):
        with pytest.raises(ValueError, match="weight mode"):
            shortest_paths(three_udg, mode="hops")
        with pytest.raises(ValueError, match="method"):
            shortest_paths(three_udg, method="quantum")

    def test_topology_routes_use_directed_edges_as_undirected(self, three_udg):
        # route tables treat a directed topology through its undirected view
        y = yao_step(three_udg, 8)
        table = shortest_paths(y)
        assert table.get(0, 2) > 0.0
        assert table.get(2, 0) == table.get(0, 2)


class TestStretch:
    def test_identity_has_stretch_one(self, corpus):
        g = corpus[0]
        rep = length_stretch(g, g)
        assert rep.length_stretch == 1.0
        assert rep.witness_pair is None

    def test_three_node_frozen_values(self, three_udg):
        yy = build("YY", three_udg, 8)
        rep = length_stretch(three_udg, yy)
        assert rep.length_stretch == pytest.approx(1.2068518991333952, rel=1e-12)
        assert rep.witness_pair == (0, 2)
        pw = power_stretch(three_udg, yy, beta=2.0)
        assert pw.power_stretch == 1.0
        assert pw.beta == 2.0

    def test_keep_pairs_records_every_host_connected_pair(self, three_udg):
        yy = build("YY", three_udg, 8)
        rep = length_stretch(three_udg, yy, keep_pairs=True)
        assert set(rep.per_pair_ratios) == {(0, 1), (0, 2), (1, 2)}
        assert rep.per_pair_ratios[(0, 2)] == rep.length_stretch
        assert rep.per_pair_ratios[(0, 1)] == 1.0

    def test_beta_outside_window_warns(self, three_udg):
        yy = build("YY", three_udg, 8)
        for beta in (1.5, 6.0):
            with pytest.warns(UserWarning, match="path-loss exponent"):
                power_stretch(three_udg, yy, beta=beta)

    def test_beta_inside_window_silent(self, three_udg):
        import warnings

        yy = build("YY", three_udg, 8)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            power_stretch(three_udg, yy, beta=2.0)
            power_stretch(three_udg, yy, beta=5.0)

    def test_subgraph_violations_rejected(self, three_udg):
        from conespan.geometry import ConeScheme, DirectedTopology

        pts = three_udg.points
        foreign = DirectedTopology(
            pts, ConeScheme(8), [(0, 2), (2, 0), (0, 1)], 1.0, structure="Y"
        )
        # drop (0, 2) from the host by shrinking the radius below 0.95
        small_host = build_udg(pts, 0.94)
        with pytest.raises(ValueError, match="absent from the host"):
            length_stretch(small_host, foreign)

    def test_point_set_mismatch_rejected(self, three_udg, fan_points):
        other = build_udg(fan_points, 1.0)
        with pytest.raises(ValueError, match="point set"):
            length_stretch(three_udg, other)

    def test_adding_edges_never_hurts(self, corpus):
        for g in corpus[:3]:
            y = build("Y", g, 8)
            yy = build("YY", g, 8)
            assert (
                length_stretch(g, y).length_stretch
                <= length_stretch(g, yy).length_stretch + 1e-12
            )

    def test_power_at_most_length_to_the_beta(self, corpus):
        for g in corpus[:2]:
            for structure in ("Y", "YY"):
                t = build(structure, g, 8)
                ls = length_stretch(g, t).length_stretch
                for beta in (2.0, 3.0):
                    ps = power_stretch(g, t, beta=beta).power_stretch
                    assert ps <= ls**beta + 1e-9


class TestWeights:
    def test_total_weight_unit_square(self):
        # four corners of a unit square: the four sides are in range and
        # both diagonals are not
        g = build_udg(gen_figure6(2), 1.0)
        assert total_weight(g) == pytest.approx(4.0)
        yy = build("YY", g, 8)
        assert total_weight(yy) <= total_weight(g) + 1e-12

    def test_figure6_weights(self):
        for s in (2, 5, 50):
            g = build_udg(gen_figure6(s), 1.0)
            y = build("Y", g, 8)
            assert total_weight(y) == pytest.approx(s + 2.0, rel=1e-12)
            assert mst_weight(g) == pytest.approx(3.0, rel=1e-12)

    def test_mst_matches_external_library(self, corpus):
        for g in corpus:
            ref = networkx.minimum_spanning_tree(to_nx(g), weight="weight")
            ref_w = sum(d["weight"] for _, _, d in ref.edges(data=True))
            assert mst_weight(g) == pytest.approx(ref_w, rel=1e-9)

    def test_mst_requires_connectivity(self):
        from conespan.geometry import PointSet

        pts = PointSet([(0, 0.0, 0.0), (1, 5.0, 5.0)])
        with pytest.raises(ValueError, match="connected"):
            mst_weight(build_udg(pts, 1.0))

    def test_mst_of_trivial_graphs(self):
        from conespan.geometry import PointSet

        assert mst_weight(build_udg(PointSet([(0, 0.0, 0.0)]), 1.0)) == 0.0

    def test_mst_lower_bounds_every_connected_structure(self, corpus):
        for g in corpus[:3]:
            m = mst_weight(g)
            for structure in ("Y", "YY", "YS"):
                t = build(structure, g, 8)
                assert total_weight(t) >= m - 1e-12

    def test_weight_report_ratio(self, corpus):
        g = corpus[0]
        y = build("Y", g, 8)
        rep = weight_report(y, g)
        assert rep.ratio == pytest.approx(rep.structure_weight / rep.mst_weight)


class TestDegreeStats:
    def test_fan_star(self, fan_star):
        stats = degree_stats(fan_star)
        assert stats.max_degree == 4
        assert stats.degrees[0] == 4
        assert stats.degrees[1] == 1
        assert stats.in_cone[(0, 0)] == 4
        assert stats.max_in_cone() == 4
        assert all(count == 1 for count in stats.out_cone.values())

    def test_out_cone_sums_to_out_degree(self, corpus):
        g = corpus[2]
        y = build("Y", g, 8)
        stats = degree_stats(y)
        for u in g.points.ids:
            total = sum(c for (a, _), c in stats.out_cone.items() if a == u)
            assert total == len(y.out_edges(u))

    def test_yao_out_cone_at_most_one(self, corpus):
        g = corpus[1]
        y = build("Y", g, 9)
        stats = degree_stats(y)
        assert all(c == 1 for c in stats.out_cone.values())

    def test_empty_topology(self):
        from conespan.geometry import ConeScheme, DirectedTopology, PointSet

        pts = PointSet([(0, 0.0, 0.0), (1, 0.5, 0.0)])
        empty = DirectedTopology(pts, ConeScheme(6), [], 1.0)
        stats = degree_stats(empty)
        assert stats.max_degree == 0
        assert stats.max_in_cone() == 0


class TestBounds:
    def test_selection_bound_frozen_values(self):
        b9 = compute_bounds(9)
        assert b9.conditions["yao"] is True
        assert b9.yao_bound == pytest.approx(3.164960460944895, rel=1e-15)
        assert b9.yao_bound == pytest.approx(
            1.0 / (1.0 - 2.0 * math.sin(math.pi / 9.0)), rel=1e-15
        )
        assert b9.yao_sink_bound == pytest.approx(b9.yao_bound**2, rel=1e-15)
        b8 = compute_bounds(8)
        assert b8.yao_bound == pytest.approx(4.261972627395669, rel=1e-15)

    def test_selection_bound_needs_k_at_least_seven(self):
        for k in (3, 4, 5, 6):
            b = compute_bounds(k)
            assert b.conditions["yao"] is False
            assert b.yao_bound is None
            assert b.yao_sink_bound is None
        assert compute_bounds(7).conditions["yao"] is True

    def test_separation_bound_frozen_value(self):
        b = compute_bounds(24, min_separation=0.5)
        assert b.conditions["theorem1"] is True
        assert b.theorem1_bound == pytest.approx(8.242640687119268, rel=1e-12)
        lam = 0.5
        theta = 2.0 * math.pi / 24
        expected = lam / ((lam + 1.0) * (math.cos(theta) - math.sin(theta)) - 1.0)
        assert b.theorem1_bound == pytest.approx(expected, rel=1e-15)

    def test_separation_bound_requires_k_above_eight(self):
        b = compute_bounds(8, min_separation=0.5)
        assert b.conditions["theorem1"] is False
        assert b.theorem1_bound is None

    def test_separation_bound_requires_wide_enough_cones(self):
        # at k=9 and tiny separation the angular slack condition fails
        b = compute_bounds(9, min_separation=0.01)
        assert b.conditions["theorem1"] is False
        assert b.theorem1_bound is None

    def test_filtered_sink_bound_frozen_values(self):
        b = compute_bounds(32, r=1.1)
        assert b.theorem2_lambda == pytest.approx(0.46345052645832646, rel=1e-15)
        assert b.theorem2_bound == pytest.approx(3.3481254112511856, rel=1e-12)
        assert b.conditions["theorem2_statement"] is True
        assert b.conditions["theorem2_proof"] is True
        assert b.conditions["theorem2_formula"] is True
        lam2 = 1.0 / (2.0 * 1.1 * math.cos(2.0 * math.pi / 32.0))
        assert b.theorem2_lambda == pytest.approx(lam2, rel=1e-15)

    def test_filtered_sink_statement_and_proof_conditions_differ(self):
        # the statement-level condition is weaker than the proof-level
        # one; there are parameters where only the statement holds
        found = False
        for k in range(8, 40):
            for r in (1.05, 1.1, 1.5, 2.0, 3.0, 5.0):
                b = compute_bounds(k, r=r)
                stmt = b.conditions["theorem2_statement"]
                proof = b.conditions["theorem2_proof"]
                if proof:
                    assert stmt, (k, r)
                if stmt and not proof:
                    found = True
        assert found

    def test_filtered_sink_bound_absent_when_conditions_fail(self):
        b = compute_bounds(6, r=2.0)
        assert b.conditions["theorem2_formula"] is False
        assert b.theorem2_bound is None

    def test_bad_ratio_rejected(self):
        with pytest.raises(ValueError, match="ratio"):
            compute_bounds(8, r=1.0)

    def test_cone_count_frozen_value(self):
        b = compute_bounds(9, min_separation=0.5, epsilon=1.0)
        assert b.conditions["corollary1"] is True
        assert b.corollary1_k == 41
        assert b.corollary1_inequality == "meets-or-exceeds"
        # the found k really is the first that satisfies the inequality
        lam, eps = 0.5, 1.0
        target = (lam + eps + 1.0) / ((lam + 1.0) * (eps + 1.0))
        t41 = 2.0 * math.pi / 41
        t40 = 2.0 * math.pi / 40
        assert math.cos(t41) - math.sin(t41) >= target
        assert math.cos(t40) - math.sin(t40) < target

    def test_cone_count_monotone_in_epsilon(self):
        # a looser stretch target never demands more cones
        ks = [
            compute_bounds(9, min_separation=0.5, epsilon=eps).corollary1_k
            for eps in (0.25, 0.5, 1.0, 2.0)
        ]
        assert all(a >= b for a, b in zip(ks, ks[1:]))

    def test_bounds_without_optional_parameters(self):
        b = compute_bounds(9)
        assert "theorem1" not in b.conditions
        assert "theorem2_formula" not in b.conditions
        assert "corollary1" not in b.conditions
        assert b.theorem1_bound is None
        assert b.theorem2_bound is None
        assert b.corollary1_k is None

    def test_selection_bound_decreases_with_k(self):
        values = [compute_bounds(k).yao_bound for k in range(7, 40)]
        assert all(a > b for a, b in zip(values, values[1:]))
        # approaching 1 from above as cones narrow
        assert compute_bounds(10_000).yao_bound < 1.001


class TestStretchAgainstBounds:
    def test_selection_stretch_within_bound_on_corpus(self, corpus):
        for g in corpus:
            for k in (7, 8, 9):
                bound = compute_bounds(k).yao_bound
                y = build("Y", g, k)
                assert length_stretch(g, y).length_stretch <= bound + 1e-9

    def test_sink_stretch_within_squared_bound_on_corpus(self, corpus):
        for g in corpus[:4]:
            k = 8
            bound = compute_bounds(k).yao_sink_bound
            ys = build("YS", g, k)
            assert length_stretch(g, ys).length_stretch <= bound + 1e-9
