"""Common interface of all predictors.

Every predictor exposes the exact probability of predicting label 1, so invariants are
checked on probabilities; `predict` draws from that Bernoulli with the caller's stream.
"""

import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Literal

import numpy as np

from concepts.domain import LabeledSample

logger = logging.getLogger(__name__)

Provenance = Literal["base", "prefix-majority", "agnostic-mixture", "erm-baseline"]


class Predictor(ABC):
    """Maps (sample, test point, randomness) to a label bit."""

    provenance: Provenance = "base"
    # Prefix aggregates depend on the sample order; exact evaluation must then enumerate ordered samples.
    order_invariant: bool = True

    @property
    def name(self) -> str:
        return self.provenance

    @abstractmethod
    def prob_one(self, sample: LabeledSample, x: int) -> Fraction:
        """Exact probability that the prediction at x is 1."""
        ...

    def predict(self, sample: LabeledSample, x: int, rng: np.random.Generator) -> int:
        """Draws the label; deterministic predictions consume no randomness."""
        p = self.prob_one(sample, x)
        if p == 0:
            return 0
        if p == 1:
            return 1
        return 1 if rng.random() < p else 0

    def mistake_probability(self, sample: LabeledSample, x: int, label: int) -> Fraction:
        p = self.prob_one(sample, x)
        return 1 - p if label == 1 else p
