"""Materializes the mathematical instance (H, G, task, learners) behind an experiment config."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Tuple

from concepts.domain import ConceptClass, GroupFamily, LabeledSample
from concepts.generators import build_class, build_groups
from concepts.realizability import enumerate_group_realizable
from concepts.vc import vc_restricted
from core.errors import ConfigInvalidError
from evaluation.task import DiscreteTask, build_task
from learners.aggregates import AgnosticMixturePredictor, PrefixMajorityPredictor, mixture_size
from learners.factory import build_predictor
from learners.predictor import Predictor
from oig.one_inclusion_graph import Oig, build_oig
from schemas.config_schemas import ExperimentConfig, LearnerConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExperimentInstance:
    H: ConceptClass
    G: GroupFamily
    task: DiscreteTask

    @property
    def m(self) -> int:
        return self.H.length

    @cached_property
    def group_dims(self) -> Tuple[int, ...]:
        """d_{H|g} for every group, in family order."""
        return tuple(vc_restricted(self.H, g) for g in self.G)

    @property
    def d_sup(self) -> int:
        return max(self.group_dims, default=0)

    @cached_property
    def realizable_concepts(self) -> ConceptClass:
        return enumerate_group_realizable(self.H, self.G)

    @cached_property
    def oig(self) -> Oig:
        """OIG of the group-realizable concepts on the whole domain."""
        return build_oig(self.realizable_concepts, self.G)


def build_instance(config: ExperimentConfig) -> ExperimentInstance:
    """Builds H, G and the task of a validated config.

    Raises:
        ConfigInvalidError: If the descriptors cannot be materialized on the domain
            (wrong bit-string lengths, too few points for a hierarchy, unrealizable target).
    """
    m = config.domain.m
    try:
        H = build_class(config.hypotheses, m)
        G = build_groups(config.groups, m)
        task = build_task(config.task, H, G)
    except ConfigInvalidError:
        raise
    except ValueError as e:
        error_msg = f"Cannot build the instance of '{config.experiment_id}': {e}"
        logger.error(error_msg)
        raise ConfigInvalidError(error_msg) from e
    logger.info(f"Instance for '{config.experiment_id}': m={m}, |H|={len(H)}, |G|={len(G)}, task={config.task.kind}.")
    return ExperimentInstance(H=H, G=G, task=task)


def learner_configs(config: ExperimentConfig) -> List[LearnerConfig]:
    """The configured learner followed by every distinct comparison learner."""
    configs = [config.learner]
    for extra in config.compare_learners:
        if extra not in configs:
            configs.append(extra)
    return configs


def build_predictors(config: ExperimentConfig, instance: ExperimentInstance) -> List[Predictor]:
    return [
        build_predictor(learner, instance.H, instance.G, config.delta, instance.d_sup)
        for learner in learner_configs(config)
    ]


def sample_points(config: ExperimentConfig, n: int) -> List[int]:
    """Configured sample points, cycled to length n; defaults to 0, 1, ..., n-1 modulo m."""
    m = config.domain.m
    base: Optional[List[int]] = config.sample_points
    if not base:
        return [i % m for i in range(n)]
    return [base[i % len(base)] for i in range(n)]


def target_sample(instance: ExperimentInstance, points: List[int]) -> LabeledSample:
    if instance.task.target is None:
        raise ConfigInvalidError("Realizable samples need a task with a target concept.")
    return LabeledSample.labeled_by(points, instance.task.target)


def supports_sample_size(predictor: Predictor, n: int) -> bool:
    """Whether the predictor is defined on n-point samples (aggregates need enough prefixes)."""
    if isinstance(predictor, PrefixMajorityPredictor):
        return n >= 4
    if isinstance(predictor, AgnosticMixturePredictor):
        return n >= 2 and 1 <= mixture_size(n, predictor.delta, predictor.d) <= n - 1
    return True
