"""Independent checks of the matching solver on small networks.

brute_force_optimum searches a rational grid from below the LP optimum; group_max_flow computes
the g-specific max flow with networkx.
"""

import logging
import math
from fractions import Fraction
from typing import List, Tuple

import networkx as nx

from constants import ORACLE_MAX_DENOMINATOR, ORACLE_MAX_EDGES
from core.errors import InstanceTooLargeError
from matching.network import MgNetwork

logger = logging.getLogger(__name__)


def _grid_pairs(step: Fraction) -> List[Tuple[Fraction, Fraction]]:
    """All (a, b) on the grid with a + b <= 1, largest sums first."""
    ticks = int(1 / step)
    pairs = [(step * a, step * b) for a in range(ticks + 1) for b in range(ticks + 1 - a)]
    return sorted(pairs, key=lambda p: (-(p[0] + p[1]), -p[0]))


def brute_force_optimum(network: MgNetwork) -> Fraction:
    """Best matching value on the grid of step 1/(2 * lcm), found by branch and bound.

    It equals the LP optimum whenever some optimum lies on the grid and bounds it from below
    otherwise, since multi-group optima need not share the capacities' denominators.

    Raises:
        InstanceTooLargeError: Above ORACLE_MAX_EDGES edge nodes or ORACLE_MAX_DENOMINATOR.
    """
    if network.n_edges > ORACLE_MAX_EDGES:
        raise InstanceTooLargeError(f"Oracle handles at most {ORACLE_MAX_EDGES} edge nodes, got {network.n_edges}.")
    denominator = network.scale()
    if denominator > ORACLE_MAX_DENOMINATOR:
        raise InstanceTooLargeError(
            f"Oracle handles capacity denominators up to {ORACLE_MAX_DENOMINATOR}, got {denominator}."
        )

    oig = network.oig
    pairs = _grid_pairs(Fraction(1, 2 * denominator))
    loads = [[Fraction(0)] * network.n_groups for _ in range(oig.n_vertices)]
    n_edges = network.n_edges
    best = Fraction(0)

    def fits(vertex: int, groups: Tuple[int, ...], amount: Fraction) -> bool:
        return all(loads[vertex][gid] + amount <= network.capacity(vertex, gid) for gid in groups)

    def shift(vertex: int, groups: Tuple[int, ...], amount: Fraction) -> None:
        for gid in groups:
            loads[vertex][gid] += amount

    def search(eid: int, value: Fraction) -> bool:
        nonlocal best
        if value + (n_edges - eid) <= best:
            return False
        if eid == n_edges:
            best = value
            return best == n_edges
        edge = oig.edges[eid]
        groups = oig.edge_groups[eid]
        for a, b in pairs:
            if value + a + b + (n_edges - eid - 1) <= best:
                break
            if not (fits(edge.u, groups, a) and fits(edge.v, groups, b)):
                continue
            shift(edge.u, groups, a)
            shift(edge.v, groups, b)
            done = search(eid + 1, value + a + b)
            shift(edge.u, groups, -a)
            shift(edge.v, groups, -b)
            if done:
                return True
        return False

    search(0, Fraction(0))
    logger.debug(f"Oracle optimum {best} over {n_edges} edge nodes.")
    return best


def group_flow_graph(network: MgNetwork, gid: int) -> Tuple[nx.DiGraph, int]:
    """The group's flow network, scaled to integers: s -> e (1), e -> endpoints (unbounded), v -> t (capacity)."""
    oig = network.oig
    scale = math.lcm(1, *(network.capacity(v, gid).denominator for v in range(oig.n_vertices)))
    graph = nx.DiGraph()
    graph.add_node("s")
    graph.add_node("t")
    for eid in oig.group_index[gid]:
        edge = oig.edges[eid]
        graph.add_edge("s", ("e", eid), capacity=scale)
        graph.add_edge(("e", eid), ("v", edge.u))
        graph.add_edge(("e", eid), ("v", edge.v))
    for vertex in range(oig.n_vertices):
        graph.add_edge(("v", vertex), "t", capacity=int(network.capacity(vertex, gid) * scale))
    return graph, scale


def group_max_flow(network: MgNetwork, gid: int) -> Fraction:
    graph, scale = group_flow_graph(network, gid)
    return Fraction(nx.maximum_flow_value(graph, "s", "t", capacity="capacity"), scale)


def saturating_flow_check(network: MgNetwork, gid: int) -> bool:
    """True iff the group's max flow saturates every relevant edge node (value |E_g|)."""
    return group_max_flow(network, gid) == len(network.oig.group_index[gid])
