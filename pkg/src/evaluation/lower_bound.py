"""The disjoint-points lower-bound harness and the geometric tail estimate behind it.

The instance puts I points with pairwise-disjoint group memberships (singleton groups) under
the full cube, with mass 1 - 2 epsilon (I - 1) on the first point and 2 epsilon on each
other point. Every labeling b of the points is a group-realizable target; a learner fails
on a sample when some group error reaches epsilon.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, List, Optional, Tuple

import numpy as np

from concepts.domain import Behavior, ConceptClass, GroupFamily, LabeledSample
from concepts.generators import full_cube
from concepts.vc import vc_restricted_sup
from constants import MAX_EXHAUSTIVE_LOWER_BOUND_I
from core.errors import EpsilonOutOfRangeError
from evaluation.bounds import geometric_tail_threshold, lower_bound_n1, lower_bound_n2
from evaluation.rng import stream_rng
from evaluation.task import DiscreteTask
from learners.predictor import Predictor
from utils.compute_aggregate_metrics import compute_average, compute_standard_error

logger = logging.getLogger(__name__)

# Pilot trials used to pick the adversarial labeling above the exhaustive cap.
HEURISTIC_PILOT_TRIALS = 200


@dataclass(frozen=True)
class LowerBoundInstance:
    points: int
    epsilon: Fraction

    @property
    def epsilon0(self) -> Fraction:
        return 2 * self.epsilon

    @cached_property
    def hypotheses(self) -> ConceptClass:
        return full_cube(self.points)

    @cached_property
    def groups(self) -> GroupFamily:
        return GroupFamily.of((1 << (self.points - 1 - i) for i in range(self.points)), self.points)

    @cached_property
    def masses(self) -> Tuple[Fraction, ...]:
        heavy = 1 - self.epsilon0 * (self.points - 1)
        return (heavy,) + (self.epsilon0,) * (self.points - 1)

    @property
    def n1(self) -> float:
        return lower_bound_n1(vc_restricted_sup(self.hypotheses, self.groups), self.epsilon)

    @property
    def n2(self) -> float:
        return lower_bound_n2(self.points, self.epsilon)

    def task_for(self, b: int) -> DiscreteTask:
        return DiscreteTask(domain_size=self.points, masses=self.masses, target=Behavior(b, self.points))

    def labelings(self) -> Iterator[int]:
        return iter(range(1 << self.points))


@dataclass(frozen=True)
class LowerBoundReport:
    """Failure probability of the worst labeling found, with its standard error."""

    n: int
    failure_prob: float
    standard_error: float
    worst_b: str
    searched: int
    exhaustive: bool


@dataclass(frozen=True)
class TailEstimate:
    k: int
    delta: Fraction
    t: float
    estimate: float
    standard_error: float

    @property
    def bound(self) -> float:
        return math.exp(-self.t)

    @property
    def satisfied(self) -> bool:
        return self.estimate <= self.bound + 3 * self.standard_error


def build_lower_bound_instance(points: int, epsilon: Fraction) -> LowerBoundInstance:
    """I points under singleton groups and the full cube.

    Raises:
        EpsilonOutOfRangeError: Unless 0 < epsilon and I <= 1 / (2 epsilon).
    """
    epsilon = Fraction(epsilon)
    if points < 1:
        raise ValueError(f"The lower-bound instance needs at least one point, got {points}.")
    if not 0 < epsilon < 1 or points * 2 * epsilon > 1:
        error_msg = f"Need 0 < epsilon and I <= 1/(2 epsilon); got I={points}, epsilon={epsilon}."
        logger.error(error_msg)
        raise EpsilonOutOfRangeError(error_msg)
    return LowerBoundInstance(points=points, epsilon=epsilon)


def _draw_points(instance: LowerBoundInstance, n: int, rng: np.random.Generator) -> List[int]:
    weights = np.array([float(mass) for mass in instance.masses])
    return [int(x) for x in rng.choice(instance.points, size=n, p=weights / weights.sum())]


def _fails(predictor: Predictor, instance: LowerBoundInstance, task: DiscreteTask, points: List[int]) -> bool:
    """True iff some singleton group {x} has err_g = P(x) P[A(S)(x) != b(x)] >= epsilon under task D_b."""
    sample = LabeledSample.labeled_by(points, task.target)
    for x in range(instance.points):
        mistake = task.mistake_probability(predictor.prob_one(sample, x), x)
        if instance.masses[x] * mistake >= instance.epsilon:
            return True
    return False


def _adversarial_labeling(predictor: Predictor, instance: LowerBoundInstance, n: int, seed: int) -> int:
    """b_i opposite the learner's average answer at x_i over pilot samples that miss x_i."""
    zero = Behavior(0, instance.points)
    votes = [Fraction(0)] * instance.points
    counts = [0] * instance.points
    for trial in range(HEURISTIC_PILOT_TRIALS):
        points = _draw_points(instance, n, stream_rng(seed, n, trial))
        sample = LabeledSample.labeled_by(points, zero)
        for x in set(range(instance.points)) - set(points):
            votes[x] += predictor.prob_one(sample, x)
            counts[x] += 1
    b = 0
    for x in range(instance.points):
        if counts[x] and votes[x] / counts[x] < Fraction(1, 2):
            b |= 1 << (instance.points - 1 - x)
    return b


def lower_bound_failure_prob(
    instance: LowerBoundInstance,
    predictor: Predictor,
    n: int,
    trials: int,
    seed: int = 0,
    exhaustive_max: int = MAX_EXHAUSTIVE_LOWER_BOUND_I,
) -> LowerBoundReport:
    """max over labelings b of the estimated Pr_S[max_g err_g(A(S)) >= epsilon].

    Trial t draws its points from stream (seed, n, t) for every b, so labelings are compared
    on common samples. Above `exhaustive_max` points a single adversarial b is evaluated.
    """
    exhaustive = instance.points <= exhaustive_max
    if exhaustive:
        candidates = list(instance.labelings())
    else:
        candidates = [_adversarial_labeling(predictor, instance, n, seed)]
        logger.info(f"I={instance.points} exceeds {exhaustive_max}; evaluating the adversarial labeling only.")

    draws = [_draw_points(instance, n, stream_rng(seed, n, trial)) for trial in range(trials)]
    best: Optional[Tuple[float, float, int]] = None
    for b in candidates:
        task = instance.task_for(b)
        outcomes = [1.0 if _fails(predictor, instance, task, points) else 0.0 for points in draws]
        estimate = compute_average(outcomes)
        if best is None or estimate > best[0]:
            best = (estimate, compute_standard_error(outcomes), b)
    estimate, standard_error, worst = best
    worst_b = str(Behavior(worst, instance.points))
    logger.debug(f"Lower bound n={n} for {predictor.name}: failure {estimate:.4f} at b={worst_b}.")
    return LowerBoundReport(
        n=n,
        failure_prob=estimate,
        standard_error=standard_error,
        worst_b=worst_b,
        searched=len(candidates),
        exhaustive=exhaustive,
    )


def geometric_tail_estimate(k: int, delta: Fraction, t: float, trials: int, seed: int = 0) -> TailEstimate:
    """Monte Carlo Pr[sum_i G_i <= (k ln(k+1) - k t) / delta] for independent geometric G_i.

    G_i has success probability delta (1 - (i - 1)/k), i = 1..k, and support 1, 2, ...
    """
    if not 0 < delta < 1 or k < 1 or t <= 0:
        raise ValueError(f"Need delta in (0, 1), k >= 1 and t > 0; got delta={delta}, k={k}, t={t}.")
    rng = stream_rng(seed, k)
    success = [float(delta) * (1 - (i - 1) / k) for i in range(1, k + 1)]
    totals = np.zeros(trials, dtype=np.int64)
    for p in success:
        totals += rng.geometric(p, size=trials)
    hits = (totals <= geometric_tail_threshold(k, delta, t)).astype(float)
    return TailEstimate(
        k=k,
        delta=Fraction(delta),
        t=t,
        estimate=compute_average(hits.tolist()),
        standard_error=compute_standard_error(hits.tolist()),
    )


def tail_grid(k_grid, delta_grid, t_grid, trials: int, seed: int = 0) -> List[TailEstimate]:
    return [
        geometric_tail_estimate(k, delta, t, trials, seed)
        for k, delta, t in itertools.product(k_grid, delta_grid, t_grid)
    ]
