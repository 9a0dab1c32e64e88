"""Exact Steiner distances and structural audits of ``sdiam_k`` for ``k`` near ``n``."""

from __future__ import annotations

from .graph import Graph, GraphError, Graph6Error, from_edge_list, parse_graph6, to_graph6
from .steiner import INFINITE, Engine, SteinerResult, steiner_diameter, steiner_distance

__all__ = [
    "INFINITE",
    "Engine",
    "Graph",
    "Graph6Error",
    "GraphError",
    "SteinerResult",
    "from_edge_list",
    "parse_graph6",
    "steiner_diameter",
    "steiner_distance",
    "to_graph6",
]
__version__ = "0.1.0"
