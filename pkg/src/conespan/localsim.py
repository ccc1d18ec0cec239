"""One-round local computation model.

Every node broadcasts its id and coordinates once, so each node learns
exactly its closed 1-hop neighborhood. A node then runs the full
construction on that induced unit disk graph and adopts the edges
incident to itself; the distributed result is the union of all adopted
edges. The report compares that union against the centralized build and
itemizes any disagreement instead of hiding it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from conespan.geometry import (
    ConeScheme,
    DirectedTopology,
    PointSet,
    UnitDiskGraph,
    build_udg,
    cone_of_nodes,
    edge_sort_key,
)
from conespan.topology import Edge, build

MESSAGE_BYTES = 24  # one id and two coordinates, 8 bytes each


@dataclass(frozen=True)
class NodeView:
    """What one node knows after the broadcast round: itself plus every
    neighbor, with the unit-disk edges among them."""

    owner: int
    members: Tuple[int, ...]
    graph: UnitDiskGraph


def node_view(g: UnitDiskGraph, owner: int) -> NodeView:
    members = tuple(sorted({owner, *g.neighbors(owner)}))
    rows = [(m, *g.points.position(m)) for m in members]
    local = build_udg(PointSet(rows), g.radius)
    return NodeView(owner=owner, members=members, graph=local)


@dataclass(frozen=True)
class LocalRunReport:
    """Outcome of a distributed run: the union topology, the centralized
    reference, the symmetric difference, and the communication cost."""

    structure: str
    k: int
    r: Optional[float]
    central: DirectedTopology
    union: DirectedTopology
    local_only: Tuple[Edge, ...]
    central_only: Tuple[Edge, ...]
    messages_sent: int
    bytes_estimate: int

    @property
    def equivalent(self) -> bool:
        return not self.local_only and not self.central_only


def run_local(
    g: UnitDiskGraph, structure: str, k: int, r: Optional[float] = None
) -> LocalRunReport:
    """Simulate the one-round protocol for one structure and compare the
    union of locally adopted edges against the centralized construction."""
    points = g.points
    central = build(structure, g, k, r)
    adopted: set = set()
    for owner in sorted(points.ids):
        view = node_view(g, owner)
        local = build(structure, view.graph, k, r)
        for a, b in local.edges:
            if owner in (a, b):
                adopted.add((a, b))
    union = DirectedTopology(
        points,
        ConeScheme(k),
        adopted,
        g.radius,
        structure=f"local-{central.structure}",
        filter_ratio=central.filter_ratio,
    )
    central_set = central.edge_set()
    union_set = union.edge_set()
    key = lambda e: edge_sort_key(points, e)
    local_only = tuple(sorted(union_set - central_set, key=key))
    central_only = tuple(sorted(central_set - union_set, key=key))
    n = len(points)
    total_degree = sum(g.degree(u) for u in points.ids)
    return LocalRunReport(
        structure=central.structure,
        k=k,
        r=r,
        central=central,
        union=union,
        local_only=local_only,
        central_only=central_only,
        messages_sent=n,
        bytes_estimate=MESSAGE_BYTES * total_degree,
    )


@dataclass(frozen=True)
class Discrepancy:
    """One edge on which the distributed union and the centralized build
    disagree."""

    edge: Edge
    present_locally: bool
    present_centrally: bool


def compare_local_centralized(
    report: LocalRunReport, central: Optional[DirectedTopology] = None
) -> List[Discrepancy]:
    """Set-difference both directions, sorted by edge identifier. Pass a
    topology to compare against something other than the report's own
    centralized build."""
    reference = report.central if central is None else central
    points = report.union.points
    union_set = report.union.edge_set()
    central_set = reference.edge_set()
    out = [
        Discrepancy(edge=e, present_locally=True, present_centrally=False)
        for e in union_set - central_set
    ]
    out.extend(
        Discrepancy(edge=e, present_locally=False, present_centrally=True)
        for e in central_set - union_set
    )
    out.sort(key=lambda d: edge_sort_key(points, d.edge))
    return out


def check_clique_property(
    g: UnitDiskGraph, k: int
) -> Tuple[bool, Optional[Tuple[int, int, int, int]]]:
    """Whether, at every node, the neighbors inside any single cone are
    pairwise adjacent. Holds whenever the cone angle is at most 60
    degrees (k >= 6); the first violation comes back as
    (apex, cone, neighbor, neighbor)."""
    scheme = ConeScheme(k)
    points = g.points
    r2 = g.radius * g.radius
    for v in sorted(points.ids):
        by_cone: Dict[int, List[int]] = {}
        for w in g.neighbors(v):
            by_cone.setdefault(cone_of_nodes(scheme, points, v, w), []).append(w)
        for c in sorted(by_cone):
            members = sorted(by_cone[c])
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    if points.dist2(members[i], members[j]) > r2:
                        return False, (v, c, members[i], members[j])
    return True, None
