"""One-round neighborhood protocol: each node rebuilds the pipeline on its
closed neighborhood and adopts its incident edges; the union is compared
against the centralized construction."""

import math

import pytest

from conespan.geometry import PointSet, build_udg
from conespan.instances import gen_figure6, gen_uniform
from conespan.localsim import (
    MESSAGE_BYTES,
    check_clique_property,
    compare_local_centralized,
    node_view,
    run_local,
)
from conespan.topology import build


def phantom_instance():
    """Smallest known generated instance where the sink-tree step is not
    locally reproducible: node 9 cannot see that node 4's per-cone winner
    lies outside N[9], so its simulated tree attaches 4 to itself."""
    side = 3.0 * math.sqrt(10.0 / 60.0)
    pts = gen_uniform(10, side, 9134)
    return build_udg(pts, 1.0)


class TestNodeView:
    def test_members_are_the_closed_neighborhood(self, corpus):
        g = corpus[0]
        for owner in g.points.ids:
            view = node_view(g, owner)
            assert view.owner == owner
            assert view.members == tuple(sorted({owner, *g.neighbors(owner)}))

    def test_view_graph_is_the_induced_disk_graph(self, corpus):
        g = corpus[1]
        owner = g.points.ids[0]
        view = node_view(g, owner)
        member_set = set(view.members)
        assert set(view.graph.points.ids) == member_set
        expected = {
            (u, v) for u, v in g.edges if u in member_set and v in member_set
        }
        assert set(view.graph.edges) == expected
        assert view.graph.radius == g.radius

    def test_view_contains_no_foreign_coordinates(self, corpus):
        g = corpus[0]
        owner = g.points.ids[-1]
        view = node_view(g, owner)
        for node_id in view.graph.points.ids:
            assert view.graph.points.position(node_id) == g.points.position(node_id)


class TestCliqueProperty:
    def test_holds_at_six_cones_on_corpus(self, corpus):
        for g in corpus:
            ok, witness = check_clique_property(g, 6)
            assert ok
            assert witness is None

    def test_holds_for_more_than_six_cones(self, corpus):
        g = corpus[2]
        for k in (8, 9, 12):
            ok, _ = check_clique_property(g, k)
            assert ok

    def test_fails_for_wide_cones(self):
        # two in-range neighbors 87 degrees apart sit in one 90-degree
        # cone but are out of range of each other
        pts = PointSet([(0, 0.0, 0.0), (1, 1.0, 0.0), (2, 0.05, 0.99)])
        g = build_udg(pts, 1.0)
        ok, witness = check_clique_property(g, 4)
        assert not ok
        assert witness == (0, 0, 1, 2)
        assert g.points.dist(1, 2) > 1.0

    def test_witness_identifies_a_real_violation(self):
        pts = PointSet([(0, 0.0, 0.0), (1, 1.0, 0.0), (2, 0.05, 0.99)])
        g = build_udg(pts, 1.0)
        _, witness = check_clique_property(g, 4)
        apex, _cone, a, b = witness
        assert a in g.neighbors(apex)
        assert b in g.neighbors(apex)
        assert b not in g.neighbors(a)


class TestRunLocal:
    def test_two_node_instance_trivially_equivalent(self):
        pts = PointSet([(0, 0.0, 0.0), (1, 0.5, 0.3)])
        g = build_udg(pts, 1.0)
        for structure in ("Y", "YY", "YS", "YE", "YES"):
            rep = run_local(g, structure, 6, r=2.0)
            assert rep.equivalent
            assert rep.messages_sent == 2

    def test_three_node_accounting(self, three_udg):
        rep = run_local(three_udg, "YS", 8)
        assert rep.equivalent
        assert rep.messages_sent == 3
        # sum of degrees is 6, at 24 bytes per coordinate report
        assert rep.bytes_estimate == 144
        assert MESSAGE_BYTES == 24

    def test_union_carries_a_local_tag(self, three_udg):
        rep = run_local(three_udg, "YY", 8)
        assert rep.structure == "YY"
        assert rep.union.structure == "local-YY"
        assert rep.central.structure == "YY"

    def test_figure6_all_structures_equivalent(self):
        g = build_udg(gen_figure6(10), 1.0)
        for structure in ("Y", "YY", "YS", "YE", "YES"):
            rep = run_local(g, structure, 8, r=2.0)
            assert rep.equivalent, structure
            assert rep.messages_sent == 20
            assert rep.bytes_estimate == 4800

    def test_selection_steps_equivalent_on_corpus(self, corpus):
        # one-per-cone selection and its reverse are exactly locally
        # reproducible once cones are at most 60 degrees
        for g in corpus[:3]:
            for k in (6, 8):
                for structure in ("Y", "YY"):
                    rep = run_local(g, structure, k)
                    assert rep.equivalent, (structure, k)

    def test_bucket_filter_equivalent_on_corpus(self, corpus):
        for g in corpus[:2]:
            rep = run_local(g, "YE", 8, r=2.0)
            assert rep.equivalent

    def test_missing_ratio_rejected(self, corpus):
        with pytest.raises(ValueError, match="requires the bucket ratio"):
            run_local(corpus[0], "YE", 8)

    def test_unknown_structure_rejected(self, corpus):
        with pytest.raises(ValueError, match="unknown structure"):
            run_local(corpus[0], "QQ", 8)


class TestSinkTreePhantom:
    """The sink-tree step is the one stage that is NOT exactly locally
    reproducible under incident-edge adoption: a node can simulate a
    neighbor's selection wrongly when that neighbor's true per-cone
    winner is outside the simulating node's view."""

    def test_known_phantom_edge(self):
        g = phantom_instance()
        rep = run_local(g, "YS", 6)
        assert not rep.equivalent
        assert rep.local_only == ((9, 4),)
        assert rep.central_only == ()
        # the phantom edge exists in the union but not centrally
        assert (9, 4) in rep.union.edge_set()
        assert (9, 4) not in rep.central.edge_set()
        assert (4, 9) not in rep.central.edge_set()

    def test_same_instance_is_exact_for_every_other_structure(self):
        g = phantom_instance()
        for structure in ("Y", "YY", "YE", "YES"):
            rep = run_local(g, structure, 6, r=2.0)
            assert rep.equivalent, structure

    def test_phantom_mechanism_is_a_view_limit(self):
        # node 4's true winner toward its cone is invisible from node 9,
        # so node 9's closed neighborhood cannot contain the information
        # needed to reproduce the central tree
        g = phantom_instance()
        view9 = node_view(g, 9)
        central = build("YS", g, 6)
        local9 = build("YS", view9.graph, 6)
        assert (9, 4) in local9.edge_set()
        assert (9, 4) not in central.edge_set()
        # the decisive competitor is a neighbor of 4 missing from N[9]
        assert set(g.neighbors(4)) - set(view9.members)


class TestCompareLocalCentralized:
    def test_no_discrepancies_when_equivalent(self, three_udg):
        rep = run_local(three_udg, "Y", 8)
        assert compare_local_centralized(rep) == []

    def test_discrepancies_sorted_and_flagged(self):
        g = phantom_instance()
        rep = run_local(g, "YS", 6)
        found = compare_local_centralized(rep)
        assert [d.edge for d in found] == [(9, 4)]
        assert found[0].present_locally is True
        assert found[0].present_centrally is False

    def test_comparison_against_a_different_reference(self, corpus):
        g = corpus[0]
        rep = run_local(g, "Y", 8)
        other = build("YY", g, 8)
        found = compare_local_centralized(rep, central=other)
        # every reported edge differs between the union and the reference
        union = rep.union.edge_set()
        reference = other.edge_set()
        assert found
        for d in found:
            assert d.present_locally == (d.edge in union)
            assert d.present_centrally == (d.edge in reference)
            assert d.present_locally != d.present_centrally
        # sorted by identifier: lengths ascend with ties on endpoints
        pts = g.points
        keys = [(pts.dist2(*d.edge), d.edge[0], d.edge[1]) for d in found]
        assert keys == sorted(keys)
