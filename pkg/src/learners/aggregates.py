"""Aggregates built on a base predictor: the prefix majority vote and the agnostic uniform mixture."""

import logging
import math
from fractions import Fraction
from typing import List

import numpy as np

from concepts.domain import LabeledSample
from core.errors import KOutOfRangeError
from learners.predictor import Predictor

logger = logging.getLogger(__name__)


def prefix_range(n: int) -> range:
    """Prefix lengths ceil(n/4) .. n-1 voting in the majority."""
    return range(math.ceil(n / 4), n)


def majority_prob_one(probabilities: List[Fraction]) -> Fraction:
    """Exact probability that strictly more than half of independent Bernoulli voters say 1.

    Ties go to label 0.
    """
    # distribution[k] = P(k ones among the voters seen so far)
    distribution = [Fraction(1)]
    for p in probabilities:
        if p == 0:
            distribution = distribution + [Fraction(0)]
            continue
        if p == 1:
            distribution = [Fraction(0)] + distribution
            continue
        q = 1 - p
        shifted = [Fraction(0)] * (len(distribution) + 1)
        for k, mass in enumerate(distribution):
            if mass:
                shifted[k] += mass * q
                shifted[k + 1] += mass * p
        distribution = shifted
    voters = len(probabilities)
    return sum((mass for k, mass in enumerate(distribution) if 2 * k > voters), Fraction(0))


class PrefixMajorityPredictor(Predictor):
    """Majority vote of the base predictor trained on the prefixes S_{<=t}, t = ceil(n/4) .. n-1."""

    provenance = "prefix-majority"
    order_invariant = False

    def __init__(self, base: Predictor):
        self.base = base

    @property
    def name(self) -> str:
        return f"majority({self.base.name})"

    def _check_size(self, sample: LabeledSample) -> None:
        if sample.n < 4:
            raise ValueError(f"The prefix majority needs at least 4 sample points, got {sample.n}.")

    def prob_one(self, sample: LabeledSample, x: int) -> Fraction:
        self._check_size(sample)
        votes = [self.base.prob_one(sample.prefix(t), x) for t in prefix_range(sample.n)]
        return majority_prob_one(votes)

    def predict(self, sample: LabeledSample, x: int, rng: np.random.Generator) -> int:
        self._check_size(sample)
        ones = sum(self.base.predict(sample.prefix(t), x, rng) for t in prefix_range(sample.n))
        voters = len(prefix_range(sample.n))
        return 1 if 2 * ones > voters else 0


def mixture_size(n: int, delta, d: int) -> int:
    """k = ceil(log(2/delta) * n / (8d + log(2/delta)))."""
    log_term = math.log(2 / float(delta))
    return math.ceil(log_term * n / (8 * d + log_term))


class AgnosticMixturePredictor(Predictor):
    """Runs the base predictor on S_{<=n-k+j} for j drawn uniformly from 0..k-1."""

    provenance = "agnostic-mixture"
    order_invariant = False

    def __init__(self, base: Predictor, delta, d: int):
        self.base = base
        self.delta = delta
        self.d = d

    @property
    def name(self) -> str:
        return f"mixture({self.base.name})"

    def mixture_size(self, n: int) -> int:
        k = mixture_size(n, self.delta, self.d)
        if not 1 <= k <= n - 1:
            error_msg = f"Mixture size k={k} is outside 1..{n - 1} for n={n}, delta={self.delta}, d={self.d}."
            logger.error(error_msg)
            raise KOutOfRangeError(error_msg)
        return k

    def prob_one(self, sample: LabeledSample, x: int) -> Fraction:
        n = sample.n
        k = self.mixture_size(n)
        total = sum((self.base.prob_one(sample.prefix(n - k + j), x) for j in range(k)), Fraction(0))
        return total / k

    def predict(self, sample: LabeledSample, x: int, rng: np.random.Generator) -> int:
        n = sample.n
        k = self.mixture_size(n)
        j = int(rng.integers(k)) if k > 1 else 0
        return self.base.predict(sample.prefix(n - k + j), x, rng)
