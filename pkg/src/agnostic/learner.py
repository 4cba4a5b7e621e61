"""The agnostic base predictor: the multi-group matching solved on the agnostic hypercube.

The sample entries and the test point become the coordinates, sorted by (point, label) with
the test coordinate placed last among the entries of its point. The sample labels fix every
coordinate except the test one, so exactly two vertices are consistent with S and the
prediction is read off the edge between them.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from agnostic.graph import AgnosticGraph, build_agnostic_graph
from concepts.domain import ConceptClass, GroupFamily, LabeledSample, point_bit
from learners.predictor import Predictor
from matching.matching import Matching
from matching.network import CapacityMode, MgNetwork, build_network
from matching.solver import solve_matching

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AgnosticInstance:
    """The solved agnostic network on one coordinate tuple."""

    graph: AgnosticGraph
    network: MgNetwork
    matching: Matching
    iterations: int

    @property
    def shortfall(self) -> Fraction:
        return self.network.n_edges - self.matching.value


@lru_cache(maxsize=1024)
def solve_agnostic(H: ConceptClass, G: GroupFamily, coord_points: Tuple[int, ...]) -> AgnosticInstance:
    """Builds the agnostic graph and solves it with capacities Phi_g + credit(v, g).

    These capacities do not always reach value |E| once groups overlap; the optimal matching
    is kept then and its `shortfall` is reported by the agnostic experiment.

    Raises:
        InstanceTooLargeError: If the hypercube exceeds MAX_AGNOSTIC_VERTICES.
    """
    graph = build_agnostic_graph(H, G, coord_points)
    # Feasible by construction, so the uniform-density warning does not apply.
    network = build_network(graph.oig, CapacityMode.EXPLICIT, graph.capacity_table(), check_density=False)
    matching, iterations = solve_matching(network, strict=False)
    logger.debug(
        f"Agnostic instance on {graph.n} coordinates: {graph.oig.n_edges} edges, "
        f"phi={[str(value) for value in graph.phis]}, iterations={iterations}."
    )
    return AgnosticInstance(graph=graph, network=network, matching=matching, iterations=iterations)


def coordinates_for(sample: LabeledSample, x: int) -> Tuple[Tuple[int, ...], List[int], int]:
    """Coordinate points, the sample labels in sorted entry order and the index of the test coordinate."""
    entries = sorted(sample.entries)
    test_coord = sum(1 for point, _ in entries if point <= x)
    coord_points = tuple(point for point, _ in entries[:test_coord]) + (x,)
    coord_points += tuple(point for point, _ in entries[test_coord:])
    labels = [label for _, label in entries]
    return coord_points, labels, test_coord


class AgnosticMgOigPredictor(Predictor):
    """Base predictor of the agnostic setting; any labeling of the sample is accepted."""

    provenance = "base"

    def __init__(self, H: ConceptClass, G: GroupFamily):
        self.H = H
        self.G = G

    @property
    def name(self) -> str:
        return "agnostic-mgoig"

    def instance_for(self, coord_points: Tuple[int, ...]) -> AgnosticInstance:
        return solve_agnostic(self.H, self.G, coord_points)

    def prob_one(self, sample: LabeledSample, x: int) -> Fraction:
        coord_points, labels, test_coord = coordinates_for(sample, x)
        instance = self.instance_for(coord_points)
        n_coords = len(coord_points)

        u = 0
        sample_coords = [coord for coord in range(n_coords) if coord != test_coord]
        for coord, label in zip(sample_coords, labels):
            if label:
                u |= point_bit(coord, n_coords)
        # u has label 0 at the test coordinate; its neighbour across it has label 1.
        eid = instance.graph.oig.edge_at(u, test_coord)
        return instance.matching.orientation(eid, u)


def agnostic_solve_and_predict(
    H: ConceptClass, G: GroupFamily, sample: LabeledSample, x: int, rng: np.random.Generator
) -> int:
    return AgnosticMgOigPredictor(H, G).predict(sample, x, rng)
