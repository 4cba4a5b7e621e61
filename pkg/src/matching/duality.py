"""Dual certificates for the multi-group matching LP.

The dual is a minimization: minimize sum_e y_e + sum_g sum_v capacity(v, g) * z_{g,v}
subject to y_e + sum_{g : e in E_g} z_{g,w} >= 1 for every edge e and each endpoint w,
with y, z >= 0. Any feasible dual value bounds every feasible matching value from above.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from matching.matching import Matching
from matching.network import MgNetwork
from utils.rationals import format_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DualCertificate:
    """y[eid] per edge node and z[gid][v] per (group, vertex)."""

    network: MgNetwork
    y: Tuple[Fraction, ...]
    z: Tuple[Tuple[Fraction, ...], ...]

    @property
    def value(self) -> Fraction:
        total = sum(self.y, Fraction(0))
        for gid, row in enumerate(self.z):
            for vertex, z_value in enumerate(row):
                total += self.network.capacity(vertex, gid) * z_value
        return total

    def is_feasible(self) -> bool:
        network = self.network
        oig = network.oig
        if len(self.y) != network.n_edges or len(self.z) != network.n_groups:
            return False
        if any(len(row) != oig.n_vertices for row in self.z):
            return False
        if any(y_e < 0 for y_e in self.y) or any(z_value < 0 for row in self.z for z_value in row):
            return False
        for eid, edge in enumerate(oig.edges):
            for endpoint in (edge.u, edge.v):
                cover = self.y[eid] + sum((self.z[gid][endpoint] for gid in oig.edge_groups[eid]), Fraction(0))
                if cover < 1:
                    return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "value": format_rational(self.value),
            "y": [format_rational(v) for v in self.y],
            "z": [[format_rational(v) for v in row] for row in self.z],
        }


def trivial_dual(network: MgNetwork) -> DualCertificate:
    """y_e = 1 on every edge node and z = 0: feasible with value |E|."""
    return DualCertificate(
        network=network,
        y=tuple(Fraction(1) for _ in range(network.n_edges)),
        z=tuple(tuple(Fraction(0) for _ in range(network.oig.n_vertices)) for _ in range(network.n_groups)),
    )


def duality_gap(matching: Matching, certificate: DualCertificate) -> Fraction:
    return certificate.value - matching.value


def verify_optimality(matching: Matching, certificate: DualCertificate) -> bool:
    """True iff both solutions are feasible and their values coincide exactly."""
    if not matching.is_feasible():
        logger.debug("Optimality check failed: the matching is infeasible.")
        return False
    if not certificate.is_feasible():
        logger.debug("Optimality check failed: the dual certificate is infeasible.")
        return False
    gap = duality_gap(matching, certificate)
    if gap != 0:
        logger.debug(f"Optimality check failed: duality gap {gap}.")
    return gap == 0
