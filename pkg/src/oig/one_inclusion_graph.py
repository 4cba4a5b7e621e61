"""One-inclusion graphs over a finite set of behaviors."""

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from concepts.domain import Behavior, ConceptClass, GroupFamily, point_bit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OigEdge:
    """An edge between vertex indices u < v whose behaviors differ only at point `coord`."""

    u: int
    v: int
    coord: int


@dataclass(frozen=True)
class Oig:
    """Vertices, Hamming-1 edges and, when built with a group family, the per-group edge index.

    group_index[gid] lists the ids of the edges whose coordinate lies in group gid.
    """

    vertices: ConceptClass
    edges: Tuple[OigEdge, ...]
    groups: GroupFamily
    group_index: Tuple[Tuple[int, ...], ...]

    @property
    def n_points(self) -> int:
        return self.vertices.length

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def vertex_index(self) -> Dict[Behavior, int]:
        return {behavior: i for i, behavior in enumerate(self.vertices.members)}

    @cached_property
    def incident_edges(self) -> Tuple[Tuple[int, ...], ...]:
        """Edge ids incident to every vertex, ascending."""
        incident: List[List[int]] = [[] for _ in range(self.n_vertices)]
        for eid, edge in enumerate(self.edges):
            incident[edge.u].append(eid)
            incident[edge.v].append(eid)
        return tuple(tuple(ids) for ids in incident)

    @cached_property
    def edge_groups(self) -> Tuple[Tuple[int, ...], ...]:
        """Group ids every edge is relevant to."""
        memberships: List[List[int]] = [[] for _ in range(self.n_edges)]
        for gid, edge_ids in enumerate(self.group_index):
            for eid in edge_ids:
                memberships[eid].append(gid)
        return tuple(tuple(gids) for gids in memberships)

    def index_of(self, behavior: Behavior) -> Optional[int]:
        return self.vertex_index.get(behavior)

    def other_endpoint(self, eid: int, vertex: int) -> int:
        edge = self.edges[eid]
        return edge.v if vertex == edge.u else edge.u

    def edge_at(self, vertex: int, coord: int) -> Optional[int]:
        """Id of the edge leaving `vertex` along `coord`, if the flipped behavior is a vertex."""
        for eid in self.incident_edges[vertex]:
            if self.edges[eid].coord == coord:
                return eid
        return None

    def to_json_dict(self) -> dict:
        """Adjacency and group index for debugging dumps."""
        return {
            "n_points": self.n_points,
            "vertices": self.vertices.to_strings(),
            "edges": [{"id": eid, "u": e.u, "v": e.v, "coord": e.coord} for eid, e in enumerate(self.edges)],
            "groups": self.groups.to_strings(),
            "group_index": [list(ids) for ids in self.group_index],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_dot(self) -> str:
        """Graphviz DOT text; edges are labelled with their differing coordinate."""
        lines = ["graph oig {"]
        for i, behavior in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{behavior}"];')
        for edge in self.edges:
            lines.append(f'  v{edge.u} -- v{edge.v} [label="x{edge.coord}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_group_index(edges: Tuple[OigEdge, ...], groups: GroupFamily, n_points: int) -> Tuple[Tuple[int, ...], ...]:
    if len(groups) and groups.length != n_points:
        raise ValueError(f"Group family is defined on {groups.length} points but the graph on {n_points}.")
    return tuple(
        tuple(eid for eid, edge in enumerate(edges) if g & point_bit(edge.coord, n_points)) for g in groups
    )


def build_oig(concepts: ConceptClass, groups: Optional[GroupFamily] = None) -> Oig:
    """Joins every pair of behaviors at Hamming distance 1.

    Edges are listed by (u, coord), so ids are deterministic. Without a group family the
    group index is empty.
    """
    n_points = concepts.length
    index = {behavior.bits: i for i, behavior in enumerate(concepts.members)}
    edges: List[OigEdge] = []
    for u, behavior in enumerate(concepts.members):
        for coord in range(n_points):
            bit = point_bit(coord, n_points)
            if behavior.bits & bit:
                continue
            v = index.get(behavior.bits | bit)
            if v is not None:
                edges.append(OigEdge(u=u, v=v, coord=coord))
    family = groups if groups is not None else GroupFamily(masks=(), length=n_points)
    edge_tuple = tuple(edges)
    oig = Oig(
        vertices=concepts,
        edges=edge_tuple,
        groups=family,
        group_index=build_group_index(edge_tuple, family, n_points),
    )
    logger.debug(f"Built OIG with {oig.n_vertices} vertices, {oig.n_edges} edges, {len(family)} groups.")
    return oig


def g_relevant_edges(oig: Oig, g: int) -> List[int]:
    """Ids of the edges whose differing coordinate lies in group mask g."""
    return [eid for eid, edge in enumerate(oig.edges) if g & point_bit(edge.coord, oig.n_points)]
