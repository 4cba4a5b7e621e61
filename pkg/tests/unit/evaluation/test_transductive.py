"""
Unit tests for the exact transductive errors.

Thresholds 000 - 001 - 011 - 111 under the full group, EXACT mode: the path has density 3/4
and its edges split (3/4, 1/4), (1/2, 1/2), (1/4, 3/4). The sample labeled by 011 on all three
points sits at vertex 011; leaving out point 0 costs the flow 1/4 on edge 011 - 111, leaving
out point 1 costs 1/2, point 2 has no edge. Error (1/4 + 1/2 + 0) / 3 = 1/4.
"""

from fractions import Fraction
from unittest.mock import patch

import pytest

from concepts.domain import ConceptClass, GroupFamily, LabeledSample
from concepts.generators import full_cube
from core.errors import InconsistentSampleError, TransductiveMismatchError
from evaluation.transductive import (
    agnostic_log_bound_ok,
    agnostic_phi_over_n,
    agnostic_transductive_error_exact,
    closed_form_transductive_error,
    permutation_transductive_error,
    sample_distance,
    transductive_error_exact,
)
from learners.mgoig import MgOigPredictor
from matching.network import CapacityMode

FULL = 0b111


@pytest.fixture
def full_sample():
    return LabeledSample.of([(0, 0), (1, 1), (2, 1)], 3)


@pytest.fixture
def repeated_sample():
    return LabeledSample.of([(0, 0), (0, 0), (2, 1)], 3)


class TestRealizable:
    def test_closed_form(self, thresholds_3, full_group_3, full_sample):
        error = closed_form_transductive_error(thresholds_3, full_group_3, full_sample, FULL, CapacityMode.EXACT)

        assert error == Fraction(1, 4)

    def test_report_agrees_with_permutations(self, thresholds_3, full_group_3, full_sample):
        report = transductive_error_exact(thresholds_3, full_group_3, full_sample, FULL, CapacityMode.EXACT)

        assert report.closed_form == Fraction(1, 4)
        assert report.permutation_average == Fraction(1, 4)
        assert report.capacity_bound == Fraction(1, 4)

    def test_repeated_points_never_err(self, thresholds_3, full_group_3, repeated_sample):
        """U = (0, 2) gives the path 00 - 01 - 11 of density 2/3; only the entry at point 2
        can err, with the flow 1/3 that 01 keeps on its edge to 00."""
        report = transductive_error_exact(thresholds_3, full_group_3, repeated_sample, FULL, CapacityMode.EXACT)

        assert report.closed_form == Fraction(1, 9)
        assert report.permutation_average == Fraction(1, 9)
        assert report.capacity_bound == Fraction(2, 9)

    def test_unassigned_mass_counts_half(self):
        """C = {01, 10, 11}, groups {10, 11}: S = 11 on both points sits at vertex 11.

        Edge 01 - 11 is split 1/2 - 1/2; edge 10 - 11 carries 2/3 and 1/6 with 1/6 unassigned,
        so leaving out point 1 costs 1/6 + 1/12. Error (1/2 + 1/4) / 2 = 3/8, above the
        capacity bound (2/3) / 2 = 1/3 that a complete matching would guarantee.
        """
        H = ConceptClass.from_strings(["01", "10", "11"])
        G = GroupFamily.from_strings(["10", "11"])
        sample = LabeledSample.of([(0, 1), (1, 1)], 2)

        report = transductive_error_exact(H, G, sample, 0b11, CapacityMode.EXACT)

        assert report.closed_form == Fraction(3, 8)
        assert report.permutation_average == Fraction(3, 8)
        assert report.capacity_bound == Fraction(1, 3)

    def test_permutation_average_directly(self, thresholds_3, full_group_3, repeated_sample):
        predictor = MgOigPredictor(thresholds_3, full_group_3, CapacityMode.EXACT)

        assert permutation_transductive_error(predictor, repeated_sample, FULL) == Fraction(1, 9)

    def test_permutation_cap_skips_the_cross_check(self, thresholds_3, full_group_3, full_sample):
        with patch("evaluation.transductive.MAX_PERMUTATION_N", 2):
            report = transductive_error_exact(thresholds_3, full_group_3, full_sample, FULL, CapacityMode.EXACT)

        assert report.permutation_average is None
        assert report.closed_form == Fraction(1, 4)

    def test_mismatch_raises(self, thresholds_3, full_group_3, full_sample, caplog):
        with patch("evaluation.transductive.permutation_transductive_error", return_value=Fraction(0)):
            with pytest.raises(TransductiveMismatchError):
                transductive_error_exact(thresholds_3, full_group_3, full_sample, FULL, CapacityMode.EXACT)

        assert "differs from the permutation average" in caplog.text

    def test_unrealizable_labeling(self, thresholds_3, full_group_3):
        sample = LabeledSample.of([(0, 1), (2, 0)], 3)

        with pytest.raises(InconsistentSampleError):
            closed_form_transductive_error(thresholds_3, full_group_3, sample, FULL)

    def test_empty_sample(self, thresholds_3, full_group_3):
        with pytest.raises(ValueError, match="nonempty"):
            closed_form_transductive_error(thresholds_3, full_group_3, LabeledSample.of([], 3), FULL)


class TestAgnostic:
    def test_sample_distance(self, thresholds_3):
        """Every threshold misses one of (0, 1) and (2, 0)."""
        sample = LabeledSample.of([(0, 1), (2, 0)], 3)

        assert sample_distance(thresholds_3, sample, FULL) == 1
        assert sample_distance(thresholds_3, sample, 0b001) == 0

    def test_single_hypothesis_error_is_fully_discounted(self):
        """H = {0} always predicts 0: the one mistake on (0, 1) equals ||S - H||."""
        H = ConceptClass.from_strings(["0"])
        G = GroupFamily.from_strings(["1"])
        sample = LabeledSample.of([(0, 0), (0, 1)], 1, require_consistent=False)

        assert agnostic_transductive_error_exact(H, G, sample, 0b1) == 0
        assert agnostic_phi_over_n(H, G, sample, 0b1) == 0

    def test_phi_over_n(self):
        sample = LabeledSample.of([(0, 0), (0, 1)], 1, require_consistent=False)

        assert agnostic_phi_over_n(full_cube(1), GroupFamily.from_strings(["1"]), sample, 0b1) == Fraction(1, 4)

    @pytest.mark.parametrize(
        "value, d, n, expected",
        [
            (Fraction(0), 0, 2, True),
            (Fraction(-1), 0, 2, True),
            (Fraction(1), 1, 256, True),
            (Fraction(2), 1, 256, False),
        ],
    )
    def test_log_bound(self, value, d, n, expected):
        assert agnostic_log_bound_ok(value, d, n) is expected
