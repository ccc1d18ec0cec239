"""Exact stretch/weight/degree metrics and closed-form bound calculators.

Shortest paths run on two independent routes: a cubic matrix relaxation
(kernel-backed, used up to 512 nodes) and per-source heap searches written
here in plain Python. Tests require the two routes to agree to 1e-9 on
every instance they touch, so neither can silently drift."""

from __future__ import annotations

import heapq
import math
import warnings
from array import array
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from conespan import _kernels
from conespan.geometry import (
    ConeScheme,
    DirectedTopology,
    PointSet,
    UnitDiskGraph,
    cone_of_nodes,
)

Graph = Union[UnitDiskGraph, DirectedTopology]

MATRIX_LIMIT = 512


def _undirected_edges(graph: Graph) -> Tuple[Tuple[int, int], ...]:
    if isinstance(graph, UnitDiskGraph):
        return graph.edges
    return graph.undirected_edges()


def _edge_weight(length: float, mode: str, beta: float) -> float:
    if mode == "length":
        return length
    if mode == "power":
        return length**beta
    raise ValueError(f"unknown weight mode {mode!r}")


@dataclass(frozen=True)
class DistanceTable:
    """All-pairs distances in point order; unreachable pairs are inf."""

    ids: Tuple[int, ...]
    flat: array
    _index: Dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {u: i for i, u in enumerate(self.ids)})

    def get(self, u: int, v: int) -> float:
        n = len(self.ids)
        return self.flat[self._index[u] * n + self._index[v]]


def _adjacency(graph: Graph, mode: str, beta: float) -> List[List[Tuple[int, float]]]:
    points = graph.points
    n = len(points)
    adj: List[List[Tuple[int, float]]] = [[] for _ in range(n)]
    for u, v in _undirected_edges(graph):
        iu, iv = points.index_of(u), points.index_of(v)
        w = _edge_weight(points.dist(u, v), mode, beta)
        adj[iu].append((iv, w))
        adj[iv].append((iu, w))
    return adj


def _matrix_route(graph: Graph, mode: str, beta: float) -> array:
    points = graph.points
    n = len(points)
    flat = array("d", [math.inf]) * (n * n)
    for i in range(n):
        flat[i * n + i] = 0.0
    for u, v in _undirected_edges(graph):
        iu, iv = points.index_of(u), points.index_of(v)
        w = _edge_weight(points.dist(u, v), mode, beta)
        flat[iu * n + iv] = w
        flat[iv * n + iu] = w
    _kernels.floyd_warshall(flat, n)
    return flat


def _dijkstra(adj: Sequence[Sequence[Tuple[int, float]]], src: int) -> List[float]:
    dist = [math.inf] * len(adj)
    dist[src] = 0.0
    heap: List[Tuple[float, int]] = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def _per_source_route(graph: Graph, mode: str, beta: float) -> array:
    adj = _adjacency(graph, mode, beta)
    n = len(adj)
    flat = array("d", [math.inf]) * (n * n)
    for i in range(n):
        row = _dijkstra(adj, i)
        flat[i * n : (i + 1) * n] = array("d", row)
    return flat


def shortest_paths(
    graph: Graph, mode: str = "length", beta: float = 2.0, method: str = "auto"
) -> DistanceTable:
    """Exact all-pairs distances under length or power(beta) weights.
    method: 'matrix', 'per-source', or 'auto' (matrix up to 512 nodes)."""
    n = len(graph.points)
    if method == "auto":
        method = "matrix" if n <= MATRIX_LIMIT else "per-source"
    if method == "matrix":
        flat = _matrix_route(graph, mode, beta)
    elif method == "per-source":
        flat = _per_source_route(graph, mode, beta)
    else:
        raise ValueError(f"unknown shortest-path method {method!r}")
    return DistanceTable(ids=graph.points.ids, flat=flat)


@dataclass(frozen=True)
class StretchReport:
    """Worst-case detour of a subgraph against its host graph. The field
    for the metric that was not computed is None; witness_pair attains
    the maximum (smallest pair ids on ties)."""

    length_stretch: Optional[float]
    power_stretch: Optional[float]
    beta: Optional[float]
    witness_pair: Optional[Tuple[int, int]]
    per_pair_ratios: Optional[Mapping[Tuple[int, int], float]] = None


def _check_subgraph(g: Graph, h: Graph) -> None:
    if h.points != g.points:
        raise ValueError("subgraph must share the host's point set")
    host = set(_undirected_edges(g))
    extra = [e for e in _undirected_edges(h) if e not in host]
    if extra:
        raise ValueError(f"subgraph has {len(extra)} edges absent from the host, e.g. {extra[0]}")


def _max_ratio(
    g: Graph, h: Graph, mode: str, beta: float, keep_pairs: bool
) -> Tuple[float, Optional[Tuple[int, int]], Optional[Dict[Tuple[int, int], float]]]:
    _check_subgraph(g, h)
    points = g.points
    d_g = shortest_paths(g, mode, beta)
    d_h = shortest_paths(h, mode, beta)
    n = len(points)
    order = sorted(points.ids)
    index = {u: points.index_of(u) for u in order}
    best = 1.0
    witness: Optional[Tuple[int, int]] = None
    pairs: Optional[Dict[Tuple[int, int], float]] = {} if keep_pairs else None
    for a in range(len(order)):
        u = order[a]
        iu = index[u]
        for b in range(a + 1, len(order)):
            v = order[b]
            iv = index[v]
            dg = d_g.flat[iu * n + iv]
            if dg == math.inf:
                continue  # stretch ranges over host-connected pairs only
            ratio = d_h.flat[iu * n + iv] / dg
            if pairs is not None:
                pairs[(u, v)] = ratio
            if ratio > best:
                best = ratio
                witness = (u, v)
    return best, witness, pairs


def length_stretch(g: Graph, h: Graph, keep_pairs: bool = False) -> StretchReport:
    """Maximum over host-connected pairs of (shortest path in h) /
    (shortest path in g) under length weights."""
    value, witness, pairs = _max_ratio(g, h, "length", 2.0, keep_pairs)
    return StretchReport(
        length_stretch=value,
        power_stretch=None,
        beta=None,
        witness_pair=witness,
        per_pair_ratios=pairs,
    )


def power_stretch(
    g: Graph, h: Graph, beta: float = 2.0, keep_pairs: bool = False
) -> StretchReport:
    """Same maximum under power weights |uv|**beta. Exponents outside
    [2, 5] draw a warning but are still computed."""
    if not (2.0 <= beta <= 5.0):
        warnings.warn(
            f"path-loss exponent {beta} is outside the usual [2, 5] range",
            stacklevel=2,
        )
    value, witness, pairs = _max_ratio(g, h, "power", beta, keep_pairs)
    return StretchReport(
        length_stretch=None,
        power_stretch=value,
        beta=beta,
        witness_pair=witness,
        per_pair_ratios=pairs,
    )


def total_weight(graph: Graph) -> float:
    """Sum of undirected edge lengths, each edge counted once."""
    points = graph.points
    return math.fsum(points.dist(u, v) for u, v in _undirected_edges(graph))


def mst_weight(g: UnitDiskGraph) -> float:
    """Weight of a minimum spanning tree of the unit disk graph."""
    points = g.points
    ids = points.ids
    if len(ids) <= 1:
        return 0.0
    start = ids[0]
    seen = {start}
    heap: List[Tuple[float, int, int]] = []
    total: List[float] = []
    for v in g.neighbors(start):
        heapq.heappush(heap, (points.dist(start, v), start, v))
    while heap and len(seen) < len(ids):
        w, _, v = heapq.heappop(heap)
        if v in seen:
            continue
        seen.add(v)
        total.append(w)
        for t in g.neighbors(v):
            if t not in seen:
                heapq.heappush(heap, (points.dist(v, t), v, t))
    if len(seen) < len(ids):
        raise ValueError("minimum spanning tree requires a connected graph")
    return math.fsum(total)


@dataclass(frozen=True)
class WeightReport:
    structure_weight: float
    mst_weight: float
    ratio: float


def weight_report(topology: Graph, g: UnitDiskGraph) -> WeightReport:
    w = total_weight(topology)
    m = mst_weight(g)
    return WeightReport(structure_weight=w, mst_weight=m, ratio=w / m)


@dataclass(frozen=True)
class DegreeStats:
    """Undirected-view degrees plus directed per-cone counts."""

    max_degree: int
    degrees: Mapping[int, int]
    out_cone: Mapping[Tuple[int, int], int]
    in_cone: Mapping[Tuple[int, int], int]

    def max_in_cone(self) -> int:
        return max(self.in_cone.values(), default=0)


def degree_stats(topology: DirectedTopology) -> DegreeStats:
    points = topology.points
    scheme = topology.scheme
    degrees: Dict[int, int] = {u: 0 for u in points.ids}
    for u, v in topology.undirected_edges():
        degrees[u] += 1
        degrees[v] += 1
    out_cone: Dict[Tuple[int, int], int] = {}
    in_cone: Dict[Tuple[int, int], int] = {}
    for u, v in topology.edges:
        co = cone_of_nodes(scheme, points, u, v)
        ci = cone_of_nodes(scheme, points, v, u)
        out_cone[(u, co)] = out_cone.get((u, co), 0) + 1
        in_cone[(v, ci)] = in_cone.get((v, ci), 0) + 1
    return DegreeStats(
        max_degree=max(degrees.values(), default=0),
        degrees=degrees,
        out_cone=out_cone,
        in_cone=in_cone,
    )


@dataclass(frozen=True)
class BoundsReport:
    """Closed-form bound values with their side-condition flags. A bound
    is None when its preconditions fail or its parameters were not given;
    conditions records every flag that was decidable."""

    k: int
    theta: float
    min_separation: Optional[float]
    r: Optional[float]
    epsilon: Optional[float]
    beta: Optional[float]
    yao_bound: Optional[float]
    yao_sink_bound: Optional[float]
    theorem1_bound: Optional[float]
    theorem2_lambda: Optional[float]
    theorem2_bound: Optional[float]
    corollary1_k: Optional[int]
    corollary1_inequality: str
    conditions: Mapping[str, bool]


def compute_bounds(
    k: int,
    min_separation: Optional[float] = None,
    r: Optional[float] = None,
    epsilon: Optional[float] = None,
    beta: Optional[float] = None,
) -> BoundsReport:
    """Evaluate every closed-form bound that applies at these parameters.
    Unavailable bounds come back as None with their condition flags set,
    never as an exception."""
    scheme = ConeScheme(k)
    theta = scheme.theta
    cos_t = math.cos(theta)
    sin_t = math.sin(theta)
    cos_minus_sin = cos_t - sin_t
    cos_2t = math.cos(2.0 * theta)
    conditions: Dict[str, bool] = {}

    # 2*sin(pi/k) < 1 exactly when k > 6; deciding on the integer avoids
    # the float hairline at k = 6 where the denominator rounds to ~1e-16
    conditions["yao"] = k >= 7
    yao_denom = 1.0 - 2.0 * math.sin(math.pi / k)
    yao_bound = 1.0 / yao_denom if k >= 7 else None
    yao_sink_bound = yao_bound * yao_bound if yao_bound is not None else None

    theorem1_bound = None
    if min_separation is not None:
        lam = min_separation
        cond = k > 8 and cos_minus_sin > 1.0 / (lam + 1.0)
        conditions["theorem1"] = cond
        if cond:
            theorem1_bound = lam / ((lam + 1.0) * cos_minus_sin - 1.0)

    theorem2_lambda = None
    theorem2_bound = None
    if r is not None:
        if not (r > 1.0):
            raise ValueError(f"bucket ratio must be > 1, got {r}")
        if cos_t > 0.0:
            lam2 = 1.0 / (2.0 * r * cos_t)
            theorem2_lambda = lam2
            stmt = cos_minus_sin > lam2 / (lam2 + 1.0)
            proof = cos_minus_sin > 1.0 / (lam2 + 1.0)
            conditions["theorem2_statement"] = stmt
            conditions["theorem2_proof"] = proof
            conditions["theorem2_formula"] = k >= 8 and cos_2t > 0.0 and proof
            if conditions["theorem2_formula"]:
                theorem2_bound = (lam2 / cos_2t) / ((lam2 + 1.0) * cos_minus_sin - 1.0)
        else:
            conditions["theorem2_statement"] = False
            conditions["theorem2_proof"] = False
            conditions["theorem2_formula"] = False

    corollary1_k = None
    if min_separation is not None and epsilon is not None:
        lam = min_separation
        target = (lam + epsilon + 1.0) / ((lam + 1.0) * (epsilon + 1.0))
        conditions["corollary1"] = target <= 1.0
        if target <= 1.0:
            # cos - sin increases toward 1 as k grows; scan for the first hit
            kk = 9
            while kk <= 1 << 22:
                t = 2.0 * math.pi / kk
                if math.cos(t) - math.sin(t) >= target:
                    corollary1_k = kk
                    break
                kk += 1
    return BoundsReport(
        k=k,
        theta=theta,
        min_separation=min_separation,
        r=r,
        epsilon=epsilon,
        beta=beta,
        yao_bound=yao_bound,
        yao_sink_bound=yao_sink_bound,
        theorem1_bound=theorem1_bound,
        theorem2_lambda=theorem2_lambda,
        theorem2_bound=theorem2_bound,
        corollary1_k=corollary1_k,
        corollary1_inequality="meets-or-exceeds",
        conditions=conditions,
    )
