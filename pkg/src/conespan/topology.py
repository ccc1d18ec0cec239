"""The four construction steps over unit disk graphs and their
compositions, plus cone-path certification.

Pipelines: Y = cone-minimal outgoing selection; YY = Y then per-cone
incoming filter; YS = Y then sink trees; YE = Y then per-cone geometric
length buckets; YES = YE then sink trees. Certification rebuilds, for an
edge consumed by the sink step, the replacement path inside its cone and
checks the identifier-decrease chain plus both length inequalities."""

from __future__ import annotations

import math
from array import array
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from conespan import _kernels
from conespan.geometry import (
    TWO_PI,
    ConeScheme,
    DirectedTopology,
    PointSet,
    UnitDiskGraph,
    cone_of_nodes,
    edge_sort_key,
)

Edge = Tuple[int, int]

STRUCTURES = ("Y", "YY", "YS", "YE", "YES")


def _check_scheme(topology: DirectedTopology, k: int) -> ConeScheme:
    if topology.scheme.k != k:
        raise ValueError(
            f"cone count mismatch: topology built with k={topology.scheme.k}, got k={k}"
        )
    return topology.scheme


def yao_step(g: UnitDiskGraph, k: int) -> DirectedTopology:
    """Per node and per nonempty cone, keep the outgoing edge of smallest
    identifier. Out-degree is at most k."""
    scheme = ConeScheme(k)
    points = g.points
    xs, ys = points.coordinate_arrays()
    ids = points.ids
    indptr, indices = g.adjacency_csr()
    chosen = _kernels.yao_select(
        xs, ys, array("q", ids), indptr, indices, k, scheme.theta, TWO_PI
    )
    edges = [(ids[i], ids[j]) for i, j in chosen]
    return DirectedTopology(points, scheme, edges, g.radius, structure="Y")


def _incoming_by_cone(h: DirectedTopology) -> Dict[Tuple[int, int], List[int]]:
    """Group edge sources by (sink, cone index at the sink)."""
    scheme = h.scheme
    points = h.points
    groups: Dict[Tuple[int, int], List[int]] = {}
    for u, v in h.edges:
        c = cone_of_nodes(scheme, points, v, u)
        groups.setdefault((v, c), []).append(u)
    return groups


def reverse_yao_step(y: DirectedTopology, k: int) -> DirectedTopology:
    """Per node and per cone, keep only the incoming edge of smallest
    identifier. Total degree of the undirected view is at most 2k."""
    scheme = _check_scheme(y, k)
    points = y.points
    edges: List[Edge] = []
    for (v, _cone), sources in _incoming_by_cone(y).items():
        best = min(sources, key=lambda u: (points.dist2(u, v), u))
        edges.append((best, v))
    structure = "YY" if y.structure == "Y" else f"{y.structure}+rev"
    return DirectedTopology(
        points, scheme, edges, y.radius, structure=structure, filter_ratio=y.filter_ratio
    )


@dataclass(frozen=True)
class SinkTree:
    """Replacement tree for one (sink, cone): the star of edges into the
    sink within that cone becomes a bounded-degree tree oriented toward
    the sink. membership holds the candidate sets I(.) as assigned during
    construction."""

    sink: int
    cone: int
    edges: Tuple[Edge, ...]  # (child, parent), in attachment order
    membership: Mapping[int, frozenset]

    def parent_map(self) -> Dict[int, int]:
        return {child: parent for child, parent in self.edges}

    def members(self) -> frozenset:
        return self.membership[self.sink]


def _build_sink_tree(
    points: PointSet, scheme: ConeScheme, sink: int, cone: int, in_set: Sequence[int]
) -> SinkTree:
    remaining: Set[int] = set(in_set)
    membership: Dict[int, frozenset] = {sink: frozenset(in_set)}
    queue: deque = deque([sink])
    edges: List[Edge] = []
    while remaining:
        if not queue:
            raise RuntimeError("sink tree construction stalled with unattached vertices")
        u = queue.popleft()
        # group still-unattached candidates by their cone at u
        cone_members: Dict[int, List[int]] = {}
        for w in membership[u]:
            if w in remaining:
                cone_members.setdefault(
                    cone_of_nodes(scheme, points, u, w), []
                ).append(w)
        for c in sorted(cone_members):
            group = cone_members[c]
            w = min(group, key=lambda x: (points.dist2(x, u), x))
            edges.append((w, u))
            remaining.discard(w)
            queue.append(w)
            membership[w] = frozenset(x for x in group if x in remaining)
    if len(edges) != len(in_set):
        raise RuntimeError("sink tree does not span its in-set")
    return SinkTree(sink=sink, cone=cone, edges=tuple(edges), membership=membership)


def sink_step(
    h: DirectedTopology, k: int
) -> Tuple[DirectedTopology, List[SinkTree]]:
    """Replace each (sink, cone) star by a tree; the output edge set is the
    union of all tree edges. Undirected degree stays at most k(k+2)."""
    scheme = _check_scheme(h, k)
    points = h.points
    trees: List[SinkTree] = []
    edges: Set[Edge] = set()
    groups = _incoming_by_cone(h)
    for (v, cone) in sorted(groups):
        in_set = sorted(groups[(v, cone)])
        tree = _build_sink_tree(points, scheme, v, cone, in_set)
        trees.append(tree)
        edges.update(tree.edges)
    structure = {"Y": "YS", "YE": "YES"}.get(h.structure, f"{h.structure}+sink")
    topo = DirectedTopology(
        points, scheme, edges, h.radius, structure=structure, filter_ratio=h.filter_ratio
    )
    return topo, trees


@dataclass(frozen=True)
class Bucket:
    index: int
    edges: Tuple[Edge, ...]
    kept: Edge


@dataclass(frozen=True)
class BucketPartition:
    """Length-bucket decomposition of the incoming edges of one
    (sink, cone): bucket i collects lengths in [minlen*r^(i-1),
    minlen*r^i), indices clamped to [1, bucket_count]; each nonempty
    bucket keeps its smallest-identifier edge."""

    sink: int
    cone: int
    min_edge: Edge
    aspect: float
    bucket_count: int
    buckets: Tuple[Bucket, ...]

    def kept_edges(self) -> Tuple[Edge, ...]:
        return tuple(b.kept for b in self.buckets)


def sparse_filter(
    y: DirectedTopology, k: int, r: float
) -> Tuple[DirectedTopology, List[BucketPartition]]:
    """Per (sink, cone), bucket incoming edges by length in geometric
    ratio r and keep one edge per nonempty bucket. Per-cone in-degree is
    bounded by floor(log_r aspect) + 1."""
    if not (r > 1.0) or not math.isfinite(r):
        raise ValueError(f"bucket ratio must be a finite real > 1, got {r}")
    scheme = _check_scheme(y, k)
    points = y.points
    log_r = math.log(r)
    partitions: List[BucketPartition] = []
    kept: Set[Edge] = set()
    groups_in = _incoming_by_cone(y)
    for (v, cone) in sorted(groups_in):
        edges = [(u, v) for u in groups_in[(v, cone)]]
        min_edge = min(edges, key=lambda e: edge_sort_key(points, e))
        min_len = points.dist(*min_edge)
        if min_len <= 0.0:
            raise ValueError(
                f"edge {min_edge} has zero length under the squared metric; "
                "its endpoints are too close to bucket by length ratio"
            )
        lengths = {e: points.dist(*e) for e in edges}
        if min_len > min(lengths.values()):
            raise RuntimeError("minimum-identifier edge is not length-minimal")
        aspect = max(lengths.values()) / min_len
        s = max(1, math.ceil(math.log(aspect) / log_r))
        groups: Dict[int, List[Edge]] = {}
        for e in edges:
            idx = math.floor(math.log(lengths[e] / min_len) / log_r) + 1
            idx = min(max(1, idx), s)
            groups.setdefault(idx, []).append(e)
        buckets = []
        for idx in sorted(groups):
            members = sorted(groups[idx], key=lambda e: edge_sort_key(points, e))
            buckets.append(Bucket(index=idx, edges=tuple(members), kept=members[0]))
            kept.add(members[0])
        partitions.append(
            BucketPartition(
                sink=v,
                cone=cone,
                min_edge=min_edge,
                aspect=aspect,
                bucket_count=s,
                buckets=tuple(buckets),
            )
        )
    topo = DirectedTopology(
        points, scheme, kept, y.radius, structure="YE", filter_ratio=r
    )
    return topo, partitions


@dataclass(frozen=True)
class BuildArtifacts:
    """Everything a pipeline produced: the final topology plus the
    intermediate stages needed for certification and bucket audits."""

    structure: str
    topology: DirectedTopology
    yao: DirectedTopology
    pre_sink: Optional[DirectedTopology] = None
    trees: Optional[Tuple[SinkTree, ...]] = None
    partitions: Optional[Tuple[BucketPartition, ...]] = None


def build_with_artifacts(
    structure: str, g: UnitDiskGraph, k: int, r: Optional[float] = None
) -> BuildArtifacts:
    name = structure.upper()
    if name not in STRUCTURES:
        raise ValueError(f"unknown structure {structure!r}; expected one of {STRUCTURES}")
    if name in ("YE", "YES") and r is None:
        raise ValueError(f"structure {name} requires the bucket ratio r")
    y = yao_step(g, k)
    if name == "Y":
        return BuildArtifacts(name, y, y)
    if name == "YY":
        return BuildArtifacts(name, reverse_yao_step(y, k), y)
    if name == "YS":
        topo, trees = sink_step(y, k)
        return BuildArtifacts(name, topo, y, pre_sink=y, trees=tuple(trees))
    filtered, partitions = sparse_filter(y, k, r)
    if name == "YE":
        return BuildArtifacts(name, filtered, y, partitions=tuple(partitions))
    topo, trees = sink_step(filtered, k)
    return BuildArtifacts(
        name,
        topo,
        y,
        pre_sink=filtered,
        trees=tuple(trees),
        partitions=tuple(partitions),
    )


def build(
    structure: str, g: UnitDiskGraph, k: int, r: Optional[float] = None
) -> DirectedTopology:
    """Construct one of the five structures. r is required for the
    bucket-filtered pipelines (YE, YES) and ignored otherwise."""
    return build_with_artifacts(structure, g, k, r).topology


@dataclass(frozen=True)
class ConePathCertificate:
    """Witness that the sink step preserved an input edge u->v up to a
    bounded detour: the tree path from v to u stays in v's cone toward u,
    every step has a strictly smaller identifier than the direct edge
    would (terminal step excepted), and the prefix up to the first vertex
    at distance >= |uv|/(2 cos theta) from v has length at most
    |v w_ell| / cos(2 theta)."""

    src: int
    dst: int
    path: Tuple[int, ...]  # w_0 = dst ... w_h = src
    ell: int
    prefix_length: float
    lower_threshold: float
    prefix_bound: float

    @property
    def hops(self) -> int:
        return len(self.path) - 1


class CertificationError(Exception):
    """A cone-path condition failed; carries the edge and partial path."""

    def __init__(self, edge: Edge, reason: str, path: Tuple[int, ...] = ()):
        super().__init__(f"edge {edge[0]}->{edge[1]}: {reason}")
        self.edge = edge
        self.reason = reason
        self.path = path


TreeIndex = Dict[Tuple[int, int], SinkTree]


def index_trees(trees: Iterable[SinkTree]) -> TreeIndex:
    return {(t.sink, t.cone): t for t in trees}


def certify_cone_path(
    edge: Edge,
    sink_output: DirectedTopology,
    trees: Union[Sequence[SinkTree], TreeIndex],
) -> ConePathCertificate:
    """Certify one edge that was consumed by the sink step. Raises
    CertificationError when any condition fails; failures falsify the
    path lemmas for this instance and must be surfaced, never dropped."""
    points = sink_output.points
    scheme = sink_output.scheme
    u, v = edge
    index = trees if isinstance(trees, dict) else index_trees(trees)
    cone = cone_of_nodes(scheme, points, v, u)
    tree = index.get((v, cone))
    if tree is None:
        raise CertificationError(edge, "no sink tree exists for the edge's cone")
    parents = tree.parent_map()
    if u not in parents:
        raise CertificationError(edge, "edge source is not a member of its sink tree")
    chain = [u]
    while chain[-1] != v:
        nxt = parents.get(chain[-1])
        if nxt is None or len(chain) > len(points):
            raise CertificationError(edge, "broken parent chain in sink tree", tuple(chain))
        chain.append(nxt)
    path = tuple(reversed(chain))  # w_0 = v ... w_h = u
    h = len(path) - 1
    out_edges = sink_output.edge_set()
    for i in range(1, h + 1):
        w_i = path[i]
        w_prev = path[i - 1]
        if cone_of_nodes(scheme, points, v, w_i) != cone:
            raise CertificationError(edge, f"path vertex {w_i} leaves the cone", path)
        if (w_i, w_prev) not in out_edges:
            raise CertificationError(
                edge, f"path edge {w_i}->{w_prev} missing from the sink output", path
            )
        if cone_of_nodes(scheme, points, w_prev, w_i) != cone_of_nodes(
            scheme, points, w_prev, u
        ):
            raise CertificationError(
                edge, f"path edge {w_i}->{w_prev} leaves the cone toward {u}", path
            )
        if w_i != u:
            step_key = (points.dist2(w_i, w_prev), w_i, w_prev)
            direct_key = (points.dist2(u, w_prev), u, w_prev)
            if not step_key < direct_key:
                raise CertificationError(
                    edge,
                    f"identifier of {w_i}->{w_prev} does not decrease below the direct edge",
                    path,
                )
    # first vertex far enough from v, then the prefix length bound
    two_cos = 2.0 * math.cos(scheme.theta)
    lower = points.dist(u, v) / two_cos if two_cos > 0.0 else math.inf
    ell = None
    for i in range(1, h + 1):
        if points.dist(v, path[i]) >= lower:
            ell = i
            break
    if ell is None:
        raise CertificationError(
            edge, "no path vertex reaches the distance threshold from the sink", path
        )
    prefix = 0.0
    for i in range(ell):
        prefix += points.dist(path[i], path[i + 1])
    cos_2t = math.cos(2.0 * scheme.theta)
    bound = (points.dist(v, path[ell]) / cos_2t) if cos_2t > 0.0 else math.inf
    if prefix > bound:
        raise CertificationError(edge, "prefix length exceeds its bound", path)
    return ConePathCertificate(
        src=u,
        dst=v,
        path=path,
        ell=ell,
        prefix_length=prefix,
        lower_threshold=lower,
        prefix_bound=bound,
    )


def certify_all(
    pre_sink: DirectedTopology,
    sink_output: DirectedTopology,
    trees: Union[Sequence[SinkTree], TreeIndex],
) -> Tuple[List[ConePathCertificate], List[CertificationError]]:
    """Certify every edge consumed by the sink step; collect failures
    instead of stopping at the first."""
    index = trees if isinstance(trees, dict) else index_trees(trees)
    certificates: List[ConePathCertificate] = []
    failures: List[CertificationError] = []
    for edge in pre_sink.edges:
        try:
            certificates.append(certify_cone_path(edge, sink_output, index))
        except CertificationError as exc:
            failures.append(exc)
    return certificates, failures


def example_points() -> PointSet:
    """Minimal three-node demonstration instance.

    Node 0 sits at the origin with two neighbors 15 degrees apart, so at
    k = 8 both land in one cone of node 0 and the selection steps must
    arbitrate between them. The YY construction drops the direct 0-2 edge
    and routes that pair through node 1: length stretch is about 1.2069,
    while the power stretch at beta = 2 stays exactly 1 because the
    detour is cheaper than the direct hop under squared edge costs."""
    nodes = [(0, 0.0, 0.0)]
    for node_id, (length, degrees) in enumerate([(0.9, 70.0), (0.95, 85.0)], start=1):
        angle = math.radians(degrees)
        nodes.append((node_id, length * math.cos(angle), length * math.sin(angle)))
    return PointSet(nodes)
