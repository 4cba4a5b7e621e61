"""Unit tests for the ERM baseline."""

import pytest

from concepts.domain import LabeledSample
from core.errors import InconsistentSampleError
from learners.erm import ErmPredictor, erm_label, erm_predict


class TestErm:
    def test_least_consistent_concept_on_the_square(self, square_class, singleton_groups_2):
        """00 and 01 fit (0, 0); the least of them labels point 1 with 0."""
        assert erm_predict(square_class, singleton_groups_2, LabeledSample.of([(0, 0)], 2), 1) == 0

    def test_empty_sample_uses_the_least_concept(self, square_class, singleton_groups_2):
        assert erm_label(square_class, singleton_groups_2, (), 1) == 0

    def test_thresholds_pick_the_lowest_fitting_threshold(self, thresholds_3, full_group_3):
        """On points (0, 2) the behaviors fitting point 2 -> 1 are 01 and 11; 01 wins."""
        predictor = ErmPredictor(thresholds_3, full_group_3)

        assert predictor.prob_one(LabeledSample.of([(2, 1)], 3), 0) == 0
        assert predictor.prob_one(LabeledSample.of([(0, 1)], 3), 2) == 1

    def test_inconsistent_sample_raises(self, thresholds_3, full_group_3, caplog):
        with pytest.raises(InconsistentSampleError):
            erm_predict(thresholds_3, full_group_3, LabeledSample.of([(0, 1), (2, 0)], 3), 1)

        assert "consistent with the sample" in caplog.text

    def test_name_and_provenance(self, square_class, singleton_groups_2):
        predictor = ErmPredictor(square_class, singleton_groups_2)

        assert predictor.name == "erm"
        assert predictor.provenance == "erm-baseline"
