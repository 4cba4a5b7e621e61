"""Unit tests for the prefix majority vote and the agnostic uniform mixture."""

from fractions import Fraction
from unittest.mock import MagicMock

import pytest

from concepts.domain import LabeledSample
from core.errors import KOutOfRangeError
from learners.aggregates import (
    AgnosticMixturePredictor,
    PrefixMajorityPredictor,
    majority_prob_one,
    mixture_size,
    prefix_range,
)
from learners.predictor import Predictor


class PrefixLengthPredictor(Predictor):
    """Predicts 1 with probability n/128 where n is the length of the sample it receives."""

    def __init__(self):
        self.seen = []

    def prob_one(self, sample, x):
        self.seen.append(sample.n)
        return Fraction(sample.n, 128)


class ThresholdOnLengthPredictor(Predictor):
    """Predicts 1 exactly when it was trained on at least two points."""

    def prob_one(self, sample, x):
        return Fraction(1 if sample.n >= 2 else 0)


@pytest.fixture
def sample_of_four():
    return LabeledSample.of([(0, 0), (1, 1), (2, 1), (0, 0)], 3)


class TestMajorityProbOne:
    def test_three_fair_voters(self):
        """P(at least 2 of 3) = 3/8 + 1/8 = 1/2."""
        assert majority_prob_one([Fraction(1, 2)] * 3) == Fraction(1, 2)

    def test_ties_go_to_zero(self):
        """Two fair voters: only 1,1 is a strict majority, probability 1/4."""
        assert majority_prob_one([Fraction(1, 2)] * 2) == Fraction(1, 4)
        assert majority_prob_one([Fraction(1), Fraction(0)]) == 0

    def test_deterministic_voters(self):
        assert majority_prob_one([Fraction(1), Fraction(1), Fraction(0)]) == 1

    def test_no_voters(self):
        assert majority_prob_one([]) == 0


class TestPrefixMajority:
    def test_prefix_range(self):
        assert list(prefix_range(4)) == [1, 2, 3]
        assert list(prefix_range(8)) == [2, 3, 4, 5, 6, 7]

    def test_votes_over_prefixes(self, sample_of_four):
        """Prefixes of length 1, 2, 3 vote 0, 1, 1."""
        predictor = PrefixMajorityPredictor(ThresholdOnLengthPredictor())

        assert predictor.prob_one(sample_of_four, 1) == 1

    def test_predict_consumes_no_randomness_for_deterministic_voters(self, sample_of_four):
        predictor = PrefixMajorityPredictor(ThresholdOnLengthPredictor())
        rng = MagicMock()

        assert predictor.predict(sample_of_four, 1, rng) == 1
        rng.random.assert_not_called()

    def test_short_samples_are_rejected(self):
        predictor = PrefixMajorityPredictor(ThresholdOnLengthPredictor())

        with pytest.raises(ValueError, match="at least 4"):
            predictor.prob_one(LabeledSample.of([(0, 0)], 3), 1)

    def test_is_order_dependent(self):
        predictor = PrefixMajorityPredictor(ThresholdOnLengthPredictor())

        assert predictor.order_invariant is False
        assert predictor.name == "majority(base)"


class TestMixture:
    def test_mixture_size(self):
        """log(20) ~ 2.996: k = ceil(2.996 * 100 / 10.996) = 28 and ceil(2.996 * 2 / 10.996) = 1."""
        assert mixture_size(100, Fraction(1, 10), 1) == 28
        assert mixture_size(2, Fraction(1, 10), 1) == 1

    def test_averages_the_last_k_prefixes(self):
        """n = 2, k = 1: only the prefix of length 1 is used."""
        base = PrefixLengthPredictor()
        predictor = AgnosticMixturePredictor(base, Fraction(1, 10), 1)
        sample = LabeledSample.of([(0, 0), (0, 1)], 2, require_consistent=False)

        assert predictor.prob_one(sample, 1) == Fraction(1, 128)
        assert base.seen == [1]

    def test_average_over_several_prefixes(self):
        """n = 100, k = 28: prefixes 72 .. 99 average to 85.5 / 128."""
        base = PrefixLengthPredictor()
        predictor = AgnosticMixturePredictor(base, Fraction(1, 10), 1)
        sample = LabeledSample.of([(0, i % 2) for i in range(100)], 1, require_consistent=False)

        assert predictor.prob_one(sample, 0) == Fraction(171, 256)
        assert base.seen == list(range(72, 100))

    def test_k_out_of_range_raises(self, caplog):
        predictor = AgnosticMixturePredictor(PrefixLengthPredictor(), Fraction(1, 10), 1)

        with pytest.raises(KOutOfRangeError):
            predictor.prob_one(LabeledSample.of([(0, 1)], 2), 0)

        assert "outside 1..0" in caplog.text
