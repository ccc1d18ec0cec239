"""Planar primitives shared by every construction: labeled point sets,
the total order on directed edge identifiers, cone membership, unit-disk
adjacency, and the aspect-ratio/min-separation predicates."""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from conespan import _kernels

TWO_PI = 2.0 * math.pi

NodeId = int
Point = Tuple[float, float]


@dataclass(frozen=True)
class PointSet:
    """Ordered collection of (id, x, y) nodes with unique ids and unique
    coordinates. Immutable; everything downstream keys off the ids."""

    nodes: Tuple[Tuple[int, float, float], ...]
    _index: Dict[int, int] = field(init=False, repr=False, compare=False)
    _xs: array = field(init=False, repr=False, compare=False)
    _ys: array = field(init=False, repr=False, compare=False)

    def __init__(self, nodes: Iterable[Tuple[int, float, float]]) -> None:
        rows: List[Tuple[int, float, float]] = []
        for node_id, x, y in nodes:
            if not isinstance(node_id, int) or isinstance(node_id, bool) or node_id < 0:
                raise ValueError(f"node id must be a non-negative integer, got {node_id!r}")
            x = float(x)
            y = float(y)
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError(f"node {node_id} has non-finite coordinates ({x}, {y})")
            rows.append((node_id, x, y))
        index: Dict[int, int] = {}
        seen_coords: Dict[Tuple[float, float], int] = {}
        for pos, (node_id, x, y) in enumerate(rows):
            if node_id in index:
                raise ValueError(f"duplicate node id {node_id}")
            prev = seen_coords.get((x, y))
            if prev is not None:
                raise ValueError(f"nodes {prev} and {node_id} share coordinates ({x}, {y})")
            index[node_id] = pos
            seen_coords[(x, y)] = node_id
        object.__setattr__(self, "nodes", tuple(rows))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_xs", array("d", (x for _, x, _ in rows)))
        object.__setattr__(self, "_ys", array("d", (y for _, _, y in rows)))

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[Tuple[int, float, float]]:
        return iter(self.nodes)

    @property
    def ids(self) -> Tuple[int, ...]:
        return tuple(node_id for node_id, _, _ in self.nodes)

    def index_of(self, node_id: int) -> int:
        try:
            return self._index[node_id]
        except KeyError:
            raise KeyError(f"unknown node id {node_id}") from None

    def __contains__(self, node_id: int) -> bool:
        return node_id in self._index

    def position(self, node_id: int) -> Point:
        pos = self.index_of(node_id)
        return (self._xs[pos], self._ys[pos])

    def coordinate_arrays(self) -> Tuple[array, array]:
        # shared with the kernels; callers must not mutate
        return self._xs, self._ys

    def dist2(self, u: int, v: int) -> float:
        iu, iv = self.index_of(u), self.index_of(v)
        dx = self._xs[iv] - self._xs[iu]
        dy = self._ys[iv] - self._ys[iu]
        return dx * dx + dy * dy

    def dist(self, u: int, v: int) -> float:
        return math.sqrt(self.dist2(u, v))


@dataclass(frozen=True)
class EdgeKey:
    """Identifier of a directed edge: (length, source id, sink id).
    Ordering compares squared lengths so that construction-time decisions
    never depend on square-root rounding."""

    length: float
    src: int
    dst: int
    length2: float = field(repr=False)

    def _triple(self) -> Tuple[float, int, int]:
        return (self.length2, self.src, self.dst)

    def __lt__(self, other: "EdgeKey") -> bool:
        return self._triple() < other._triple()

    def __le__(self, other: "EdgeKey") -> bool:
        return self._triple() <= other._triple()

    def __gt__(self, other: "EdgeKey") -> bool:
        return self._triple() > other._triple()

    def __ge__(self, other: "EdgeKey") -> bool:
        return self._triple() >= other._triple()


def directed_edge_id(points: PointSet, u: int, v: int) -> EdgeKey:
    if u == v:
        raise ValueError(f"edge endpoints must differ, got {u}")
    d2 = points.dist2(u, v)
    return EdgeKey(length=math.sqrt(d2), src=u, dst=v, length2=d2)


def undirected_edge_id(points: PointSet, u: int, v: int) -> EdgeKey:
    """Identifier of the undirected edge uv: the smaller of the two
    directed identifiers (same length both ways, so the smaller source
    id wins)."""
    a = directed_edge_id(points, u, v)
    b = directed_edge_id(points, v, u)
    return a if a < b else b


def compare_edge_ids(
    points: PointSet, a: Tuple[int, int], b: Tuple[int, int]
) -> int:
    """Strict total order on directed edges: -1, 0, or 1 as the identifier
    of a orders before, equal to, or after that of b. Length ties break on
    source id, then sink id."""
    ta = (points.dist2(a[0], a[1]), a[0], a[1])
    tb = (points.dist2(b[0], b[1]), b[0], b[1])
    if ta < tb:
        return -1
    if ta > tb:
        return 1
    return 0


def edge_sort_key(points: PointSet, edge: Tuple[int, int]) -> Tuple[float, int, int]:
    return (points.dist2(edge[0], edge[1]), edge[0], edge[1])


@dataclass(frozen=True)
class ConeScheme:
    """k equal half-open cones of angle theta = 2*pi/k around every apex,
    cone 0 starting at the positive x-axis. Orientation is global so runs
    reproduce bit-for-bit."""

    k: int
    theta: float = field(init=False)

    def __init__(self, k: int) -> None:
        if not isinstance(k, int) or isinstance(k, bool) or k < 3:
            raise ValueError(f"cone count must be an integer >= 3, got {k!r}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "theta", TWO_PI / k)


def cone_index(scheme: ConeScheme, apex: Point, target: Point) -> int:
    """Index in [0, k) of the cone with the given apex containing target.
    Boundary rays belong to the higher-indexed cone (half-open rule,
    exact float comparison, no epsilon)."""
    dx = target[0] - apex[0]
    dy = target[1] - apex[1]
    if dx == 0.0 and dy == 0.0:
        raise ValueError("cone_index undefined for apex == target")
    return _kernels.cone_of(dx, dy, scheme.k, scheme.theta, TWO_PI)


def cone_of_nodes(scheme: ConeScheme, points: PointSet, apex: int, target: int) -> int:
    return cone_index(scheme, points.position(apex), points.position(target))


@dataclass(frozen=True)
class UnitDiskGraph:
    """Undirected graph over a PointSet with an edge exactly when the
    Euclidean distance is at most radius. Edges are stored once, as
    (smaller id, larger id), sorted by undirected edge identifier."""

    points: PointSet
    radius: float
    edges: Tuple[Tuple[int, int], ...]
    _adj: Dict[int, Tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __init__(
        self,
        points: PointSet,
        radius: float,
        edges: Iterable[Tuple[int, int]],
    ) -> None:
        canon = sorted(
            ((u, v) if u < v else (v, u) for u, v in edges),
            key=lambda e: edge_sort_key(points, e),
        )
        adj: Dict[int, List[int]] = {node_id: [] for node_id in points.ids}
        for u, v in canon:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "radius", float(radius))
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(
            self, "_adj", {n: tuple(sorted(vs)) for n, vs in adj.items()}
        )

    def neighbors(self, node_id: int) -> Tuple[int, ...]:
        return self._adj[node_id]

    def degree(self, node_id: int) -> int:
        return len(self._adj[node_id])

    def edge_lengths(self) -> List[float]:
        return [self.points.dist(u, v) for u, v in self.edges]

    def is_connected(self) -> bool:
        ids = self.points.ids
        if len(ids) <= 1:
            return True
        seen = {ids[0]}
        stack = [ids[0]]
        while stack:
            u = stack.pop()
            for v in self._adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == len(ids)

    def adjacency_csr(self) -> Tuple[array, array]:
        """Index-based CSR adjacency (indptr, indices) in node order."""
        points = self.points
        indptr = array("q", [0])
        indices = array("q")
        for node_id, _, _ in points.nodes:
            for v in self._adj[node_id]:
                indices.append(points.index_of(v))
            indptr.append(len(indices))
        return indptr, indices


def build_udg(points: PointSet, radius: float = 1.0) -> UnitDiskGraph:
    """All undirected pairs at distance <= radius (squared-form test)."""
    if not isinstance(points, PointSet):
        raise ValueError("build_udg expects a PointSet")
    if not (radius > 0.0) or not math.isfinite(radius):
        raise ValueError(f"radius must be positive and finite, got {radius}")
    xs, ys = points.coordinate_arrays()
    pair_indices = _kernels.pairs_in_range(xs, ys, radius * radius)
    ids = points.ids
    return UnitDiskGraph(points, radius, [(ids[i], ids[j]) for i, j in pair_indices])


@dataclass(frozen=True)
class DirectedTopology:
    """Directed edge set over a PointSet together with the cone scheme
    that produced it. Edges are sorted by directed edge identifier."""

    points: PointSet
    scheme: ConeScheme
    edges: Tuple[Tuple[int, int], ...]
    radius: float
    structure: str = "?"
    filter_ratio: Optional[float] = None

    def __init__(
        self,
        points: PointSet,
        scheme: ConeScheme,
        edges: Iterable[Tuple[int, int]],
        radius: float,
        structure: str = "?",
        filter_ratio: Optional[float] = None,
    ) -> None:
        edge_list = list(set(edges))
        for u, v in edge_list:
            if u not in points or v not in points:
                raise ValueError(f"edge ({u}, {v}) references a node outside the point set")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
        edge_list.sort(key=lambda e: edge_sort_key(points, e))
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "scheme", scheme)
        object.__setattr__(self, "edges", tuple(edge_list))
        object.__setattr__(self, "radius", float(radius))
        object.__setattr__(self, "structure", structure)
        object.__setattr__(self, "filter_ratio", filter_ratio)

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def undirected_edges(self) -> Tuple[Tuple[int, int], ...]:
        pairs = {(u, v) if u < v else (v, u) for u, v in self.edges}
        return tuple(sorted(pairs, key=lambda e: edge_sort_key(self.points, e)))

    def edge_lengths(self) -> List[float]:
        return [self.points.dist(u, v) for u, v in self.edges]

    def out_edges(self, node_id: int) -> List[Tuple[int, int]]:
        return [e for e in self.edges if e[0] == node_id]

    def in_edges(self, node_id: int) -> List[Tuple[int, int]]:
        return [e for e in self.edges if e[1] == node_id]


def aspect_ratio(lengths: Iterable[float]) -> float:
    """Longest length divided by shortest length of a nonempty edge set."""
    values = [float(x) for x in lengths]
    if not values:
        raise ValueError("aspect ratio of an empty edge set is undefined")
    lo = min(values)
    if lo <= 0.0:
        raise ValueError("aspect ratio requires positive edge lengths")
    return max(values) / lo


def is_civilized(points: PointSet, min_separation: float) -> bool:
    """True when no two nodes are closer than min_separation (squared-form
    comparison, boundary inclusive)."""
    if not (min_separation > 0.0):
        raise ValueError(f"min separation must be positive, got {min_separation}")
    xs, ys = points.coordinate_arrays()
    n = len(xs)
    lim = min_separation * min_separation
    for i in range(n):
        xi, yi = xs[i], ys[i]
        for j in range(i + 1, n):
            dx = xs[j] - xi
            dy = ys[j] - yi
            if dx * dx + dy * dy < lim:
                return False
    return True
