"""Deterministic instance generation and point-set I/O.

All randomness flows through SplitMix64, a named 64-bit PRNG, so any
implementation can reproduce an instance from its seed. Generators retry
with sub-seed seed+attempt until the induced unit disk graph (radius 1)
is connected; the retry budget is fixed and exhaustion is an error."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from conespan.geometry import PointSet, build_udg

_MASK64 = (1 << 64) - 1
_MAX_ATTEMPTS = 512
_DARTS_PER_POINT = 64


class SplitMix64:
    """SplitMix64 PRNG. Doubles come from the top 53 bits of each output."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def next_double(self) -> float:
        # uniform in [0, 1) with 53 random bits
        return (self.next_u64() >> 11) * 2.0**-53


def gen_figure6(s: int) -> PointSet:
    """2s nodes on the top and bottom sides of a unit square, s per side,
    spacing 1/(s-1) with both corners included. Ids run left to right
    along the top row (0..s-1), then along the bottom row (s..2s-1)."""
    if not isinstance(s, int) or isinstance(s, bool) or s < 2:
        raise ValueError(f"side count must be an integer >= 2, got {s!r}")
    step = s - 1
    nodes: List[Tuple[int, float, float]] = []
    for i in range(s):
        nodes.append((i, i / step, 1.0))
    for i in range(s):
        nodes.append((s + i, i / step, 0.0))
    return PointSet(nodes)


def _connected(points: PointSet) -> bool:
    return build_udg(points, 1.0).is_connected()


def gen_uniform(n: int, side: float, seed: int) -> PointSet:
    """n i.i.d. uniform points in [0, side]^2, regenerated with sub-seed
    seed+attempt until the radius-1 unit disk graph is connected."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"point count must be a positive integer, got {n!r}")
    if not (side > 0.0) or not math.isfinite(side):
        raise ValueError(f"side length must be positive and finite, got {side}")
    for attempt in range(_MAX_ATTEMPTS):
        rng = SplitMix64(seed + attempt)
        nodes = []
        coords = set()
        ok = True
        for i in range(n):
            x = side * rng.next_double()
            y = side * rng.next_double()
            if (x, y) in coords:
                ok = False
                break
            coords.add((x, y))
            nodes.append((i, x, y))
        if not ok:
            continue
        points = PointSet(nodes)
        if _connected(points):
            return points
    raise ValueError(
        f"no connected uniform instance after {_MAX_ATTEMPTS} attempts "
        f"(n={n}, side={side}, seed={seed}); try a smaller n or side"
    )


def gen_civilized(n: int, min_separation: float, seed: int) -> PointSet:
    """n points with pairwise distance >= min_separation, dart-thrown into
    a square of side min_separation*sqrt(2n), regenerated with sub-seed
    seed+attempt until the radius-1 unit disk graph is connected. The
    region is sized to pack about 2n points at that separation, so darts
    fill it quickly while the graph stays dense enough to connect."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"point count must be a positive integer, got {n!r}")
    if not (min_separation > 0.0) or not math.isfinite(min_separation):
        raise ValueError(f"min separation must be positive, got {min_separation}")
    side = min_separation * math.sqrt(2.0 * n)
    lim = min_separation * min_separation
    dart_budget = _DARTS_PER_POINT * n
    for attempt in range(_MAX_ATTEMPTS):
        rng = SplitMix64(seed + attempt)
        xs: List[float] = []
        ys: List[float] = []
        darts = 0
        while len(xs) < n and darts < dart_budget:
            darts += 1
            x = side * rng.next_double()
            y = side * rng.next_double()
            clear = True
            for px, py in zip(xs, ys):
                dx = px - x
                dy = py - y
                if dx * dx + dy * dy < lim:
                    clear = False
                    break
            if clear:
                xs.append(x)
                ys.append(y)
        if len(xs) < n:
            continue
        points = PointSet((i, xs[i], ys[i]) for i in range(n))
        if _connected(points):
            return points
    raise ValueError(
        f"no connected instance with separation {min_separation} after "
        f"{_MAX_ATTEMPTS} attempts (n={n}, seed={seed}); "
        f"try a smaller n or separation"
    )


@dataclass(frozen=True)
class GenSpec:
    """Serializable generator request; the same spec always yields a
    bit-identical point set."""

    kind: str
    n: Optional[int] = None
    s: Optional[int] = None
    min_separation: Optional[float] = None
    side: Optional[float] = None
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in ("uniform", "civilized", "figure6"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "figure6":
            if self.s is None:
                raise ValueError("figure6 generator needs s")
        elif self.kind == "uniform":
            if self.n is None or self.side is None or self.seed is None:
                raise ValueError("uniform generator needs n, side, and seed")
        else:
            if self.n is None or self.min_separation is None or self.seed is None:
                raise ValueError("civilized generator needs n, lambda, and seed")

    def generate(self) -> PointSet:
        if self.kind == "figure6":
            return gen_figure6(self.s)
        if self.kind == "uniform":
            return gen_uniform(self.n, self.side, self.seed)
        return gen_civilized(self.n, self.min_separation, self.seed)

    def label(self) -> str:
        if self.kind == "figure6":
            return f"figure6-s{self.s}"
        if self.kind == "uniform":
            return f"uniform-n{self.n}-side{self.side:g}-seed{self.seed}"
        return f"civilized-n{self.n}-lam{self.min_separation:g}-seed{self.seed}"

    def to_obj(self) -> Dict[str, object]:
        obj: Dict[str, object] = {"kind": self.kind}
        if self.n is not None:
            obj["n"] = self.n
        if self.s is not None:
            obj["s"] = self.s
        if self.min_separation is not None:
            obj["lambda"] = self.min_separation
        if self.side is not None:
            obj["side"] = self.side
        if self.seed is not None:
            obj["seed"] = self.seed
        return obj

    @staticmethod
    def from_obj(obj: Dict[str, object]) -> "GenSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("generator spec must be an object with a 'kind' key")
        return GenSpec(
            kind=obj["kind"],
            n=obj.get("n"),
            s=obj.get("s"),
            min_separation=obj.get("lambda"),
            side=obj.get("side"),
            seed=obj.get("seed"),
        )


def format_float(value: float) -> str:
    """17 significant decimal digits: enough to round-trip any double."""
    return format(float(value), ".17g")


def save_points(points: PointSet, path: str, radius: float = 1.0, fmt: Optional[str] = None) -> None:
    """Write a point set as JSON ({"radius": ..., "nodes": [...]}) or CSV
    (id,x,y header; no radius). Format inferred from the suffix unless
    given explicitly. Serialization is deterministic."""
    kind = fmt or ("csv" if path.endswith(".csv") else "json")
    if kind == "json":
        lines = ["{", f'  "radius": {format_float(radius)},', '  "nodes": [']
        rows = [
            f'    {{"id": {node_id}, "x": {format_float(x)}, "y": {format_float(y)}}}'
            for node_id, x, y in points
        ]
        lines.append(",\n".join(rows))
        lines.append("  ]")
        lines.append("}")
        text = "\n".join(lines) + "\n"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    elif kind == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["id", "x", "y"])
            for node_id, x, y in points:
                writer.writerow([node_id, format_float(x), format_float(y)])
    else:
        raise ValueError(f"unknown point file format {kind!r}")


def load_points_with_radius(path: str) -> Tuple[PointSet, float]:
    """Read a point set plus its radius; CSV files default the radius to 1."""
    if path.endswith(".csv"):
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != ["id", "x", "y"]:
                raise ValueError(f"expected id,x,y header in {path}, got {header}")
            nodes = []
            for row in reader:
                if not row:
                    continue
                if len(row) != 3:
                    raise ValueError(f"malformed row {row} in {path}")
                nodes.append((int(row[0]), float(row[1]), float(row[2])))
        return PointSet(nodes), 1.0
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed JSON in {path}: {exc}") from None
    if not isinstance(obj, dict) or "nodes" not in obj:
        raise ValueError(f"point file {path} must be an object with a 'nodes' list")
    radius = float(obj.get("radius", 1.0))
    nodes = []
    for row in obj["nodes"]:
        try:
            nodes.append((row["id"], float(row["x"]), float(row["y"])))
        except (TypeError, KeyError) as exc:
            raise ValueError(f"malformed node entry {row!r} in {path}") from None
    return PointSet(nodes), radius


def load_points(path: str) -> PointSet:
    return load_points_with_radius(path)[0]
