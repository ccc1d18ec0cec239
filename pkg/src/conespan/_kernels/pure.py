"""Pure-Python kernel lane. The compiled lane mirrors these loops
expression-for-expression; keep the two in lockstep."""

from __future__ import annotations

import math
from array import array
from typing import List, Tuple


def cone_of(dx: float, dy: float, k: int, theta: float, two_pi: float) -> int:
    """Cone index of direction (dx, dy) under k global half-open cones of
    angle theta anchored at the positive x-axis."""
    ang = math.atan2(dy, dx)
    if ang < 0.0:
        ang += two_pi
    idx = int(ang / theta)
    # a negative atan2 epsilon can wrap to exactly two_pi; that direction
    # sits just below the positive x-axis, i.e. in the top cone
    if idx >= k:
        idx = k - 1
    return idx


def pairs_in_range(xs: array, ys: array, r2: float) -> List[Tuple[int, int]]:
    """All index pairs (i, j), i < j, with squared distance <= r2."""
    n = len(xs)
    out: List[Tuple[int, int]] = []
    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        for j in range(i + 1, n):
            dx = xs[j] - xi
            dy = ys[j] - yi
            if dx * dx + dy * dy <= r2:
                out.append((i, j))
    return out


def yao_select(
    xs: array,
    ys: array,
    ids: array,
    indptr: array,
    indices: array,
    k: int,
    theta: float,
    two_pi: float,
) -> List[Tuple[int, int]]:
    """Per node and per nonempty cone, the outgoing neighbor whose directed
    edge identifier is smallest: minimal (squared length, sink id) since
    the source is fixed. Returns index pairs (source, chosen sink)."""
    n = len(xs)
    out: List[Tuple[int, int]] = []
    best_j = [-1] * k
    best_d2 = [0.0] * k
    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        for c in range(k):
            best_j[c] = -1
        for p in range(indptr[i], indptr[i + 1]):
            j = indices[p]
            dx = xs[j] - xi
            dy = ys[j] - yi
            ang = math.atan2(dy, dx)
            if ang < 0.0:
                ang += two_pi
            c = int(ang / theta)
            if c >= k:
                c = k - 1
            d2 = dx * dx + dy * dy
            b = best_j[c]
            if b < 0 or d2 < best_d2[c] or (d2 == best_d2[c] and ids[j] < ids[b]):
                best_j[c] = j
                best_d2[c] = d2
        for c in range(k):
            if best_j[c] >= 0:
                out.append((i, best_j[c]))
    return out


def floyd_warshall(dist: array, n: int) -> None:
    """In-place all-pairs relaxation over a flat n*n distance matrix."""
    inf = math.inf
    for m in range(n):
        base = m * n
        for i in range(n):
            dim = dist[i * n + m]
            if dim == inf:
                continue
            row = i * n
            for j in range(n):
                alt = dim + dist[base + j]
                if alt < dist[row + j]:
                    dist[row + j] = alt
