"""The agnostic one-inclusion graph: the full hypercube on the sample coordinates with group credits.

Coordinates are sample positions, so a point drawn twice contributes two coordinates. The
credit of a vertex u for group g is the fewest disagreements of u with any hypothesis on
the coordinates inside g; the discounted density of W subtracts the average credit from
the g-relevant edge density; its maximum Phi_g is attained at the whole vertex set.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Tuple

from concepts.domain import Behavior, ConceptClass, GroupFamily
from concepts.generators import full_cube
from constants import MAX_AGNOSTIC_VERTICES
from core.errors import InstanceTooLargeError
from oig.one_inclusion_graph import Oig, build_oig, g_relevant_edges

logger = logging.getLogger(__name__)

# Whole-vertex-set brute force runs over 2^(2^n) subsets.
BRUTE_FORCE_PHI_MAX_COORDS = 4


def credit(u: Behavior, H: ConceptClass, g: int) -> int:
    """min over h in H of the disagreements between u and h on the coordinates in g."""
    return min(((u.bits ^ h.bits) & g).bit_count() for h in H)


def project_onto_coordinates(H: ConceptClass, coord_points: Sequence[int]) -> ConceptClass:
    """h -> (h(x_1), ..., h(x_N)) for the coordinate points (repeats allowed)."""
    return ConceptClass.of((h.restrict(coord_points) for h in H), len(coord_points))


def groups_on_coordinates(G: GroupFamily, coord_points: Sequence[int]) -> GroupFamily:
    """Group masks over the coordinates; empty ones are dropped and duplicates merged."""
    return G.project(coord_points)


@dataclass(frozen=True)
class AgnosticGraph:
    """Full hypercube on N coordinates; vertex id equals its bit vector."""

    coord_points: Tuple[int, ...]
    hypotheses: ConceptClass
    oig: Oig

    @property
    def n(self) -> int:
        return len(self.coord_points)

    @property
    def groups(self) -> GroupFamily:
        return self.oig.groups

    def vertex(self, vid: int) -> Behavior:
        return self.oig.vertices.members[vid]

    @cached_property
    def credits(self) -> Tuple[Tuple[int, ...], ...]:
        """credits[v][gid] for every vertex and every group of the graph."""
        return tuple(
            tuple(credit(behavior, self.hypotheses, g) for g in self.groups) for behavior in self.oig.vertices
        )

    @cached_property
    def phis(self) -> Tuple[Fraction, ...]:
        return tuple(
            Fraction(len(self.oig.group_index[gid]) - sum(row[gid] for row in self.credits), self.oig.n_vertices)
            for gid in range(len(self.groups))
        )

    def capacity(self, vid: int, gid: int) -> Fraction:
        return self.phis[gid] + self.credits[vid][gid]

    def capacity_table(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(
            tuple(self.capacity(vid, gid) for gid in range(len(self.groups))) for vid in range(self.oig.n_vertices)
        )


def build_agnostic_graph(H: ConceptClass, G: GroupFamily, coord_points: Sequence[int]) -> AgnosticGraph:
    """Hypercube over the coordinates with H and G carried onto them.

    Raises:
        InstanceTooLargeError: If 2^N exceeds MAX_AGNOSTIC_VERTICES.
    """
    n = len(coord_points)
    if n == 0:
        raise ValueError("The agnostic graph needs at least one coordinate.")
    if (1 << n) > MAX_AGNOSTIC_VERTICES:
        error_msg = f"Agnostic graph on {n} coordinates exceeds the cap of {MAX_AGNOSTIC_VERTICES} vertices."
        logger.error(error_msg)
        raise InstanceTooLargeError(error_msg)
    groups = groups_on_coordinates(G, coord_points)
    oig = build_oig(full_cube(n), groups)
    return AgnosticGraph(
        coord_points=tuple(coord_points),
        hypotheses=project_onto_coordinates(H, coord_points),
        oig=oig,
    )


def discounted_density(graph: AgnosticGraph, vertices: Iterable[int], g: int) -> Fraction:
    """(|E_g^W| - sum_{w in W} credit(w, g)) / |W| for a coordinate group mask g."""
    chosen = set(vertices)
    if not chosen:
        raise ValueError("Discounted density is undefined for an empty vertex set.")
    oig = graph.oig
    inside = sum(1 for eid in g_relevant_edges(oig, g) if oig.edges[eid].u in chosen and oig.edges[eid].v in chosen)
    credits = sum(credit(graph.vertex(vid), graph.hypotheses, g) for vid in chosen)
    return Fraction(inside - credits, len(chosen))


def phi(graph: AgnosticGraph, g: int) -> Fraction:
    """Phi_g: the discounted density of the whole vertex set."""
    return discounted_density(graph, range(graph.oig.n_vertices), g)


def agnostic_capacity(graph: AgnosticGraph, vid: int, g: int) -> Fraction:
    """Phi_g + credit(v, g)."""
    return phi(graph, g) + credit(graph.vertex(vid), graph.hypotheses, g)


def brute_force_phi(graph: AgnosticGraph, g: int) -> Fraction:
    """max over every nonempty W of the discounted density; a test oracle for N <= 4.

    Raises:
        InstanceTooLargeError: Above BRUTE_FORCE_PHI_MAX_COORDS coordinates.
    """
    if graph.n > BRUTE_FORCE_PHI_MAX_COORDS:
        raise InstanceTooLargeError(f"Brute-force Phi is capped at {BRUTE_FORCE_PHI_MAX_COORDS} coordinates.")
    oig = graph.oig
    size = oig.n_vertices
    relevant = [(oig.edges[eid].u, oig.edges[eid].v) for eid in g_relevant_edges(oig, g)]
    credits = [credit(graph.vertex(vid), graph.hypotheses, g) for vid in range(size)]
    best = None
    for subset in range(1, 1 << size):
        inside = sum(1 for u, v in relevant if subset >> u & 1 and subset >> v & 1)
        members = [vid for vid in range(size) if subset >> vid & 1]
        value = Fraction(inside - sum(credits[vid] for vid in members), len(members))
        if best is None or value > best:
            best = value
    return best

