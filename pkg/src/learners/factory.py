"""Builds a predictor from its learner configuration."""

import logging
from fractions import Fraction

from agnostic.learner import AgnosticMgOigPredictor
from concepts.domain import ConceptClass, GroupFamily
from learners.aggregates import AgnosticMixturePredictor, PrefixMajorityPredictor
from learners.erm import ErmPredictor
from learners.mgoig import MgOigPredictor
from learners.predictor import Predictor
from matching.network import CapacityMode
from schemas.config_schemas import LearnerConfig

logger = logging.getLogger(__name__)


def build_predictor(config: LearnerConfig, H: ConceptClass, G: GroupFamily, delta: Fraction, d: int) -> Predictor:
    """Maps a learner kind onto its predictor.

    `d` is sup_g d_{H|g}; only the agnostic mixture uses it (together with `delta`) to size k.
    """
    mode = CapacityMode(config.capacity_mode)
    match config.kind:
        case "mgoig":
            predictor: Predictor = MgOigPredictor(H, G, mode)
        case "majority":
            predictor = PrefixMajorityPredictor(MgOigPredictor(H, G, mode))
        case "agnostic":
            predictor = AgnosticMixturePredictor(AgnosticMgOigPredictor(H, G), delta, max(d, 1))
        case "erm":
            predictor = ErmPredictor(H, G)
        case _:
            raise ValueError(f"Unsupported learner kind: {config.kind}")
    logger.debug(f"Built predictor {predictor.name}.")
    return predictor
