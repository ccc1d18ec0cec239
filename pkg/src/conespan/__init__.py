"""conespan: cone-based spanner constructions over unit disk graphs,
exact stretch/weight/degree metrics with closed-form bound calculators,
cone-path certificates, and a one-hop locality simulator."""

__version__ = "0.1.0"

__all__ = ["__version__"]
