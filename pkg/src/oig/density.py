"""Exact group-specific maximum subgraph densities of one-inclusion graphs.

The maximum of |E_g^W|/|W| is attained inside a single connected component of the
g-relevant subgraph (the density of a disjoint union is a mediant of its parts), so
components are searched one at a time by brute force over their vertex subsets.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Sequence, Tuple

import networkx as nx

from constants import MAX_DENSITY_VERTICES
from core.errors import GraphTooLargeError
from oig.one_inclusion_graph import Oig, g_relevant_edges

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DensityReport:
    """Exact maximum density of g-relevant edges and a vertex subset attaining it."""

    group_mask: int
    density: Fraction
    witness: Tuple[int, ...]


def relevant_subgraph(oig: Oig, g: int) -> nx.Graph:
    """Undirected graph on all vertices carrying only the g-relevant edges."""
    graph = nx.Graph()
    graph.add_nodes_from(range(oig.n_vertices))
    graph.add_edges_from((oig.edges[eid].u, oig.edges[eid].v) for eid in g_relevant_edges(oig, g))
    return graph


def subgraph_density(oig: Oig, vertices: Iterable[int], g: int) -> Fraction:
    """|E_g^W| / |W| for the vertex set W."""
    chosen = set(vertices)
    if not chosen:
        raise ValueError("Density is undefined for an empty vertex set.")
    inside = sum(1 for eid in g_relevant_edges(oig, g) if oig.edges[eid].u in chosen and oig.edges[eid].v in chosen)
    return Fraction(inside, len(chosen))


def _densest_in_component(component: Sequence[int], graph: nx.Graph) -> Tuple[Fraction, Tuple[int, ...]]:
    local = {vertex: i for i, vertex in enumerate(component)}
    adjacency = [0] * len(component)
    for vertex in component:
        for neighbor in graph.neighbors(vertex):
            adjacency[local[vertex]] |= 1 << local[neighbor]

    best = Fraction(-1)
    best_subset: Tuple[int, ...] = ()
    # Sizes ascend and combinations come out lexicographically, so the first strict
    # improvement is the smallest, then least, maximizer.
    for size in range(1, len(component) + 1):
        for subset in combinations(range(len(component)), size):
            mask = 0
            for i in subset:
                mask |= 1 << i
            twice_edges = sum((adjacency[i] & mask).bit_count() for i in subset)
            density = Fraction(twice_edges, 2 * size)
            if density > best:
                best = density
                best_subset = tuple(component[i] for i in subset)
    return best, best_subset


def max_subgraph_density(oig: Oig, g: int) -> DensityReport:
    """Exact max over nonempty W of |E_g^W|/|W|.

    Ties are broken by fewest vertices, then by the lexicographically least vertex tuple.

    Raises:
        GraphTooLargeError: If a component with g-relevant edges exceeds MAX_DENSITY_VERTICES.
    """
    graph = relevant_subgraph(oig, g)
    best = Fraction(0)
    best_witness: Tuple[int, ...] = (0,) if oig.n_vertices else ()

    components = sorted((sorted(c) for c in nx.connected_components(graph) if len(c) > 1), key=lambda c: c[0])
    for component in components:
        if len(component) > MAX_DENSITY_VERTICES:
            error_msg = (
                f"Component with {len(component)} vertices exceeds the density cap of {MAX_DENSITY_VERTICES} vertices."
            )
            logger.error(error_msg)
            raise GraphTooLargeError(error_msg)
        density, witness = _densest_in_component(component, graph)
        if (density, -len(witness), _negated(witness)) > (best, -len(best_witness), _negated(best_witness)):
            best, best_witness = density, witness

    logger.debug(f"Group mask {g}: max density {best} on {len(best_witness)} vertices.")
    return DensityReport(group_mask=g, density=best, witness=best_witness)


def _negated(vertices: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(-v for v in vertices)


def verify_density_report(oig: Oig, report: DensityReport) -> bool:
    """Re-checks a report: the witness attains the density and no subset of the whole graph beats it."""
    if subgraph_density(oig, report.witness, report.group_mask) != report.density:
        return False
    if oig.n_vertices > MAX_DENSITY_VERTICES:
        raise GraphTooLargeError(f"Whole-graph verification is capped at {MAX_DENSITY_VERTICES} vertices.")
    graph = relevant_subgraph(oig, report.group_mask)
    density, _ = _densest_in_component(list(range(oig.n_vertices)), graph)
    return density == report.density


def verify_haussler(oig: Oig, d: int) -> bool:
    """True iff the full-mask maximum density is at most d."""
    full = (1 << oig.n_points) - 1
    if oig.n_points == 0:
        return True
    return max_subgraph_density(oig, full).density <= d


def densities_for_groups(oig: Oig) -> List[DensityReport]:
    return [max_subgraph_density(oig, g) for g in oig.groups]
