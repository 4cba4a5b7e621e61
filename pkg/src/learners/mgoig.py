"""The multi-group one-inclusion graph predictor.

For a sample S and test point x the predictor projects H and G onto U (the distinct
points of S plus x, sorted), builds the OIG of the group-realizable concepts on U, solves
the multi-group matching and reads the prediction off the edge joining the (at most two)
vertices consistent with S.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from concepts.domain import ConceptClass, GroupFamily, LabeledSample
from concepts.realizability import enumerate_group_realizable, project_class
from core.errors import InconsistentSampleError
from learners.predictor import Predictor
from matching.matching import Matching
from matching.network import CapacityMode, MgNetwork, build_network
from matching.solver import solve_matching
from oig.one_inclusion_graph import Oig, build_oig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LearnerInstance:
    """Everything the predictor builds on one projection U."""

    points: Tuple[int, ...]
    oig: Oig
    network: MgNetwork
    matching: Matching
    iterations: int

    @property
    def shortfall(self) -> Fraction:
        return self.network.n_edges - self.matching.value

    def local(self, point: int) -> int:
        return self.points.index(point)


@lru_cache(maxsize=4096)
def group_realizable_on(H: ConceptClass, G: GroupFamily, points: Tuple[int, ...]) -> Tuple[ConceptClass, GroupFamily]:
    """Group-realizable concepts of H and G projected onto `points`, with the projected family."""
    projected_groups = G.project(points)
    return enumerate_group_realizable(project_class(H, points), projected_groups), projected_groups


@lru_cache(maxsize=4096)
def solve_projection(H: ConceptClass, G: GroupFamily, points: Tuple[int, ...], mode: CapacityMode) -> LearnerInstance:
    """Builds and solves the instance on U = points.

    The instance depends on the points only, never on their labels, so it is shared by
    every sample and test point with the same U. When the LP optimum falls below |E| the
    optimal matching is kept and `shortfall` records the unassigned edge mass.
    """
    concepts, groups = group_realizable_on(H, G, points)
    oig = build_oig(concepts, groups)
    network = build_network(oig, mode)
    matching, iterations = solve_matching(network, strict=False)
    return LearnerInstance(points=points, oig=oig, network=network, matching=matching, iterations=iterations)


def consistent_vertices(oig: Oig, points: Tuple[int, ...], labels: Dict[int, int]) -> List[int]:
    """Ids of the vertices agreeing with `labels` (point -> label) on every labeled point."""
    local = {point: i for i, point in enumerate(points)}
    return [
        vid
        for vid, behavior in enumerate(oig.vertices)
        if all(behavior.label(local[point]) == label for point, label in labels.items())
    ]


class MgOigPredictor(Predictor):
    """The base learner, with capacities chosen by `mode`."""

    provenance = "base"

    def __init__(self, H: ConceptClass, G: GroupFamily, mode: CapacityMode = CapacityMode.CEIL):
        self.H = H
        self.G = G
        self.mode = CapacityMode(mode)

    @property
    def name(self) -> str:
        return f"mgoig-{self.mode.value}"

    def instance_for(self, points: Tuple[int, ...]) -> LearnerInstance:
        return solve_projection(self.H, self.G, points, self.mode)

    def prob_one(self, sample: LabeledSample, x: int) -> Fraction:
        return labeled_prob_one(self.H, self.G, self.mode, tuple(sorted(sample.label_of().items())), x)


@lru_cache(maxsize=2**16)
def labeled_prob_one(
    H: ConceptClass, G: GroupFamily, mode: CapacityMode, labels: Tuple[Tuple[int, int], ...], x: int
) -> Fraction:
    """P(label 1 at x) given the labeled distinct points of a sample; the prediction depends on nothing else."""
    labeled = dict(labels)
    points = tuple(sorted(set(labeled) | {x}))
    instance = solve_projection(H, G, points, mode)
    consistent = consistent_vertices(instance.oig, points, labeled)
    if not consistent:
        error_msg = f"No group-realizable concept on {list(points)} is consistent with the sample."
        logger.error(error_msg)
        raise InconsistentSampleError(error_msg)

    coord = instance.local(x)
    if len(consistent) == 1:
        return Fraction(instance.oig.vertices.members[consistent[0]].label(coord))

    # Two consistent vertices differ exactly at x; u carries label 0 there.
    u, _ = consistent
    eid = instance.oig.edge_at(u, coord)
    # Label of v (1) with probability f_{e,u}; unassigned mass is split evenly.
    return instance.matching.orientation(eid, u)


def mgoig_predict(
    H: ConceptClass,
    G: GroupFamily,
    sample: LabeledSample,
    x: int,
    mode: CapacityMode,
    rng: np.random.Generator,
) -> int:
    return MgOigPredictor(H, G, mode).predict(sample, x, rng)
