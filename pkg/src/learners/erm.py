"""Empirical risk minimization over the group-realizable concepts (the baseline learner)."""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from concepts.domain import ConceptClass, GroupFamily, LabeledSample
from core.errors import InconsistentSampleError
from learners.mgoig import group_realizable_on
from learners.predictor import Predictor

logger = logging.getLogger(__name__)


@lru_cache(maxsize=2**16)
def erm_label(H: ConceptClass, G: GroupFamily, labels: Tuple[Tuple[int, int], ...], x: int) -> int:
    """Label at x of the least group-realizable concept on the labeled points plus x that fits the labels."""
    labeled = dict(labels)
    points = tuple(sorted(set(labeled) | {x}))
    concepts, _ = group_realizable_on(H, G, points)
    local = {point: i for i, point in enumerate(points)}
    for behavior in concepts:
        if all(behavior.label(local[p]) == y for p, y in labeled.items()):
            return behavior.label(local[x])
    error_msg = f"No group-realizable concept on {list(points)} is consistent with the sample."
    logger.error(error_msg)
    raise InconsistentSampleError(error_msg)


class ErmPredictor(Predictor):
    """Predicts with the lexicographically least group-realizable concept consistent with the sample."""

    provenance = "erm-baseline"

    def __init__(self, H: ConceptClass, G: GroupFamily):
        self.H = H
        self.G = G

    @property
    def name(self) -> str:
        return "erm"

    def prob_one(self, sample: LabeledSample, x: int) -> Fraction:
        return Fraction(erm_label(self.H, self.G, tuple(sorted(sample.label_of().items())), x))


def erm_predict(H: ConceptClass, G: GroupFamily, sample: LabeledSample, x: int) -> int:
    return erm_label(H, G, tuple(sorted(sample.label_of().items())), x)
