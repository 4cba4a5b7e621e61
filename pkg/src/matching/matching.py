"""Rational matchings on a multi-group network."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

from matching.network import MgNetwork
from utils.rationals import format_rational


@dataclass(frozen=True)
class Matching:
    """flows[eid] = (f_{e,u}, f_{e,v}) for the edge's endpoints u < v."""

    network: MgNetwork = field(repr=False, compare=False)
    flows: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if len(self.flows) != self.network.n_edges:
            raise ValueError(f"Expected flows for {self.network.n_edges} edges, got {len(self.flows)}.")

    @property
    def value(self) -> Fraction:
        return sum((f_u + f_v for f_u, f_v in self.flows), Fraction(0))

    def flow(self, eid: int, vertex: int) -> Fraction:
        """f_{e,vertex} for an endpoint of edge eid."""
        edge = self.network.oig.edges[eid]
        if vertex == edge.u:
            return self.flows[eid][0]
        if vertex == edge.v:
            return self.flows[eid][1]
        raise ValueError(f"Vertex {vertex} is not an endpoint of edge {eid}.")

    def unassigned(self, eid: int) -> Fraction:
        f_u, f_v = self.flows[eid]
        return 1 - f_u - f_v

    def orientation(self, eid: int, vertex: int) -> Fraction:
        """Probability that edge eid is oriented towards `vertex`: f_{e,vertex} plus half the unassigned mass.

        The prediction on the edge takes the label of the other endpoint with this probability.
        On a prediction-sufficient matching it equals f_{e,vertex}; an edge with no flow is a fair coin.
        """
        return self.flow(eid, vertex) + self.unassigned(eid) / 2

    def load(self, vertex: int, gid: int) -> Fraction:
        """Sum of f_{e,vertex} over the group's relevant edges at vertex."""
        oig = self.network.oig
        return sum(
            (self.flow(eid, vertex) for eid in oig.incident_edges[vertex] if gid in oig.edge_groups[eid]),
            Fraction(0),
        )

    def is_integral(self) -> bool:
        return all(f.denominator == 1 for pair in self.flows for f in pair)

    def is_feasible(self) -> bool:
        """Arc flows in [0, 1], at most one unit per edge node and every (vertex, group) load within capacity."""
        for f_u, f_v in self.flows:
            if f_u < 0 or f_v < 0 or f_u + f_v > 1:
                return False
        network = self.network
        for vertex in range(network.oig.n_vertices):
            for gid in range(network.n_groups):
                if self.load(vertex, gid) > network.capacity(vertex, gid):
                    return False
        return True

    def to_json_dict(self) -> dict:
        oig = self.network.oig
        arcs = []
        for eid, (f_u, f_v) in enumerate(self.flows):
            edge = oig.edges[eid]
            arcs.append({"edge": eid, "vertex": edge.u, "flow": format_rational(f_u)})
            arcs.append({"edge": eid, "vertex": edge.v, "flow": format_rational(f_v)})
        return {"value": format_rational(self.value), "integral": self.is_integral(), "arcs": arcs}


def zero_matching(network: MgNetwork) -> Matching:
    return Matching(network=network, flows=tuple((Fraction(0), Fraction(0)) for _ in range(network.n_edges)))


def is_prediction_sufficient(matching: Matching) -> bool:
    """True iff every edge node is fully assigned: f_{e,u} + f_{e,v} = 1."""
    return all(f_u + f_v == 1 for f_u, f_v in matching.flows)
