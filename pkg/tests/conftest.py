"""Shared fixtures: small hand-placed instances with known structure and a
cached corpus of generated instances for oracle sweeps."""

import math

import pytest

from conespan.geometry import ConeScheme, DirectedTopology, PointSet, build_udg
from conespan.instances import gen_uniform


def polar(radius: float, degrees: float):
    angle = math.radians(degrees)
    return radius * math.cos(angle), radius * math.sin(angle)


@pytest.fixture(scope="session")
def three_points() -> PointSet:
    """Node 0 at the origin with two neighbors 15 degrees apart; at k=8 both
    fall in the same cone of node 0, so every selection step has to
    arbitrate between them."""
    x1, y1 = polar(0.9, 70.0)
    x2, y2 = polar(0.95, 85.0)
    return PointSet([(0, 0.0, 0.0), (1, x1, y1), (2, x2, y2)])


@pytest.fixture(scope="session")
def three_udg(three_points):
    return build_udg(three_points, 1.0)


@pytest.fixture(scope="session")
def fan_points() -> PointSet:
    """Four sources inside cone 0 of the origin at k=8, at lengths
    0.2 / 0.3 / 0.5 / 0.9 -- a ready-made bucket-filter workout."""
    nodes = [(0, 0.0, 0.0)]
    for node_id, (length, deg) in enumerate(
        [(0.2, 5.0), (0.3, 15.0), (0.5, 25.0), (0.9, 40.0)], start=1
    ):
        x, y = polar(length, deg)
        nodes.append((node_id, x, y))
    return PointSet(nodes)


@pytest.fixture(scope="session")
def fan_star(fan_points) -> DirectedTopology:
    """A star of edges into node 0, shaped like a per-cone selection output."""
    return DirectedTopology(
        fan_points,
        ConeScheme(8),
        [(1, 0), (2, 0), (3, 0), (4, 0)],
        1.0,
        structure="Y",
    )


@pytest.fixture(scope="session")
def corpus():
    """Deterministic mixed-size connected instances for oracle sweeps."""
    params = [
        (12, 1.6, 11),
        (16, 1.8, 12),
        (20, 2.0, 13),
        (25, 2.2, 14),
        (30, 2.4, 15),
        (40, 2.6, 16),
    ]
    return [build_udg(gen_uniform(n, side, seed), 1.0) for n, side, seed in params]
