"""The multi-group bipartite network built on a one-inclusion graph."""

import logging
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from core.errors import CapacityBelowDensityWarning, GraphTooLargeError
from oig.density import DensityReport, max_subgraph_density
from oig.one_inclusion_graph import Oig
from utils.rationals import format_rational

logger = logging.getLogger(__name__)


class CapacityMode(str, Enum):
    """How the per-(vertex, group) capacities are chosen."""

    EXACT = "exact"  # d_g
    CEIL = "ceil"  # ceil(d_g)
    EXPLICIT = "explicit"  # caller-supplied table


@dataclass(frozen=True)
class MgNetwork:
    """Edge nodes, vertex nodes, the two arcs of every edge node and capacities per (vertex, group).

    capacities[v][gid] bounds the total flow into vertex v over the edges relevant to group gid.
    Edges relevant to no group are unconstrained.
    """

    oig: Oig
    capacities: Tuple[Tuple[Fraction, ...], ...]
    mode: CapacityMode
    densities: Tuple[Optional[DensityReport], ...]

    def __post_init__(self):
        if len(self.capacities) != self.oig.n_vertices:
            raise ValueError(f"Expected capacities for {self.oig.n_vertices} vertices, got {len(self.capacities)}.")
        n_groups = len(self.oig.groups)
        for row in self.capacities:
            if len(row) != n_groups:
                raise ValueError(f"Every vertex needs one capacity per group ({n_groups}).")
            if any(cap < 0 for cap in row):
                raise ValueError("Capacities must be non-negative.")

    @property
    def n_edges(self) -> int:
        return self.oig.n_edges

    @property
    def n_groups(self) -> int:
        return len(self.oig.groups)

    def capacity(self, vertex: int, gid: int) -> Fraction:
        return self.capacities[vertex][gid]

    def edge_groups(self, eid: int) -> Tuple[int, ...]:
        return self.oig.edge_groups[eid]

    def arcs(self) -> Tuple[Tuple[int, int], ...]:
        """(edge id, vertex) for both arcs of every edge node, in edge order."""
        return tuple((eid, endpoint) for eid, edge in enumerate(self.oig.edges) for endpoint in (edge.u, edge.v))

    def scale(self) -> int:
        """Least common denominator of all capacities."""
        return math.lcm(1, *(cap.denominator for row in self.capacities for cap in row))

    def is_integral(self) -> bool:
        return self.scale() == 1

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "oig": self.oig.to_json_dict(),
            "arcs": [{"edge": eid, "vertex": v} for eid, v in self.arcs()],
            "capacities": [[format_rational(cap) for cap in row] for row in self.capacities],
        }


def build_network(
    oig: Oig,
    mode: CapacityMode = CapacityMode.CEIL,
    explicit_capacities: Optional[Sequence[Sequence[Fraction]]] = None,
    check_density: bool = True,
) -> MgNetwork:
    """Sets capacity(v, g) per mode over the groups the OIG was built with.

    EXACT and CEIL compute d_g = max_subgraph_density for every group. EXPLICIT takes the
    caller's table; when that table is uniform in v for some group and falls below d_g, a
    CapacityBelowDensityWarning is emitted and solving continues best-effort. Callers whose
    capacities are feasible by construction skip that check with check_density=False.
    """
    mode = CapacityMode(mode)
    n_groups = len(oig.groups)

    if mode is CapacityMode.EXPLICIT:
        if explicit_capacities is None:
            raise ValueError("EXPLICIT mode needs an explicit capacity table.")
        capacities = tuple(tuple(Fraction(cap) for cap in row) for row in explicit_capacities)
        network = MgNetwork(oig=oig, capacities=capacities, mode=mode, densities=(None,) * n_groups)
        if check_density:
            _warn_if_below_density(network)
        return network

    densities = tuple(max_subgraph_density(oig, g) for g in oig.groups)
    if mode is CapacityMode.EXACT:
        per_group = tuple(report.density for report in densities)
    else:
        per_group = tuple(Fraction(math.ceil(report.density)) for report in densities)
    capacities = tuple(per_group for _ in range(oig.n_vertices))
    logger.debug(f"Network capacities ({mode.value}): {[format_rational(c) for c in per_group]}")
    return MgNetwork(oig=oig, capacities=capacities, mode=mode, densities=densities)


def _warn_if_below_density(network: MgNetwork) -> None:
    oig = network.oig
    if oig.n_vertices == 0:
        return
    for gid, g in enumerate(oig.groups):
        column = {network.capacities[v][gid] for v in range(oig.n_vertices)}
        if len(column) != 1:
            continue
        uniform = next(iter(column))
        try:
            density = max_subgraph_density(oig, g).density
        except GraphTooLargeError:
            logger.debug(f"Skipping the density check for group {gid}: graph too large.")
            continue
        if uniform < density:
            message = f"Uniform capacity {uniform} for group {gid} is below its density {density}."
            logger.warning(message)
            warnings.warn(message, CapacityBelowDensityWarning, stacklevel=3)
