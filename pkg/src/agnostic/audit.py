"""JSON audit of an agnostic instance: credits, Phi_g, capacities and the discounted-density bound."""

import logging
import math
from typing import Sequence

from agnostic.graph import AgnosticGraph, build_agnostic_graph, phi
from concepts.domain import ConceptClass, GroupFamily, restrict_bits
from concepts.vc import vc_restricted
from constants import AGNOSTIC_CONSTANT
from utils.rationals import format_decimal, format_rational

logger = logging.getLogger(__name__)


def coordinate_group(G: GroupFamily, gid: int, coord_points: Sequence[int]) -> int:
    """Mask over the coordinates of domain group gid (0 when no coordinate lies in it)."""
    return restrict_bits(G.masks[gid], G.length, coord_points)


def phi_bound(n_coords: int, d: int) -> float:
    """16 * sqrt(N * d_{H|g})."""
    return AGNOSTIC_CONSTANT * math.sqrt(n_coords * d)


def audit_groups(graph: AgnosticGraph, H: ConceptClass, G: GroupFamily) -> list:
    """Per domain group: Phi_g on the coordinates, d_{H|g} and whether Phi_g <= 16 sqrt(N d_{H|g})."""
    rows = []
    for gid, g in enumerate(G):
        mask = coordinate_group(G, gid, graph.coord_points)
        d = vc_restricted(H, g)
        value = phi(graph, mask) if mask else 0
        bound = phi_bound(graph.n, d)
        rows.append(
            {
                "g_id": gid,
                "coordinates": [i for i in range(graph.n) if mask >> (graph.n - 1 - i) & 1],
                "phi": format_rational(value),
                "phi_decimal": format_decimal(value),
                "d_H_g": d,
                "bound": bound,
                "bound_satisfied": value <= bound,
            }
        )
    return rows


def audit_agnostic(H: ConceptClass, G: GroupFamily, coord_points: Sequence[int]) -> dict:
    """Credits, Phi_g and per-vertex capacities of the agnostic graph on `coord_points`.

    Credits and capacities are listed per group of the coordinate family (domain groups
    that coincide on the coordinates share one column).
    """
    graph = build_agnostic_graph(H, G, coord_points)
    vertices = []
    for vid in range(graph.oig.n_vertices):
        vertices.append(
            {
                "vertex": str(graph.vertex(vid)),
                "credits": list(graph.credits[vid]),
                "capacities": [format_rational(graph.capacity(vid, gid)) for gid in range(len(graph.groups))],
            }
        )
    groups = audit_groups(graph, H, G)
    violations = [row["g_id"] for row in groups if not row["bound_satisfied"]]
    if violations:
        logger.warning(f"Phi_g exceeds 16 sqrt(N d_H|g) for groups {violations}.")
    logger.info(f"Audited agnostic graph on {graph.n} coordinates with {len(graph.groups)} coordinate groups.")
    return {
        "coord_points": list(graph.coord_points),
        "coordinate_groups": graph.groups.to_strings(),
        "phi": [format_rational(value) for value in graph.phis],
        "groups": groups,
        "vertices": vertices,
    }
