"""
Unit tests for the prediction-error harness.

Square (full cube on two points, singleton groups), uniform marginal, target 00, EXACT
capacities. With one draw the sample is (0, 0) or (1, 0); the unseen point is predicted 1 with
probability 1/2, so each group errs with 1/2 * 1/2 = 1/4 when its point is unseen. Averaged
over the two samples, err_g = 1/8 against the bound d_{H|g}/(n+1) = 1/2.
"""

from fractions import Fraction

import pytest

from agnostic.learner import AgnosticMgOigPredictor
from concepts.domain import Behavior, GroupFamily, LabeledSample
from concepts.generators import full_cube
from evaluation.prediction import (
    conditional_error,
    conditional_group_errors,
    expected_group_errors,
    pac_audit,
    prediction_error,
    prefix_average_audit,
    sampled_group_errors,
    sup_group_error,
)
from evaluation.task import DiscreteTask
from learners.erm import ErmPredictor
from learners.mgoig import MgOigPredictor
from matching.network import CapacityMode

HALF = Fraction(1, 2)


@pytest.fixture
def square_task():
    return DiscreteTask(domain_size=2, masses=(HALF, HALF), target=Behavior(0, 2))


@pytest.fixture
def exact_predictor(square_class, singleton_groups_2):
    return MgOigPredictor(square_class, singleton_groups_2, CapacityMode.EXACT)


class TestConditionalErrors:
    def test_given_a_sample(self, exact_predictor, square_task, singleton_groups_2):
        sample = LabeledSample.of([(0, 0)], 2)

        assert conditional_group_errors(exact_predictor, square_task, singleton_groups_2, sample) == [0, Fraction(1, 4)]

    def test_conditional_error(self):
        assert conditional_error(Fraction(1, 8), HALF) == Fraction(1, 4)
        assert conditional_error(0.125, HALF) == 0.25
        assert conditional_error(Fraction(1, 8), Fraction(0)) is None


class TestExact:
    def test_expected_errors(self, exact_predictor, square_task, singleton_groups_2):
        assert expected_group_errors(exact_predictor, square_task, singleton_groups_2, 1) == [Fraction(1, 8)] * 2

    def test_empty_sample(self, exact_predictor, square_task, singleton_groups_2):
        assert expected_group_errors(exact_predictor, square_task, singleton_groups_2, 0) == [Fraction(1, 4)] * 2

    def test_report_rows(self, exact_predictor, square_task, singleton_groups_2, square_class):
        report = prediction_error(exact_predictor, square_task, singleton_groups_2, square_class, 1, mode="exact")

        row = report.row(0)
        assert row.value == Fraction(1, 8)
        assert row.conditional == Fraction(1, 4)
        assert row.bound == HALF
        assert row.bound_satisfied is True
        assert row.ci_halfwidth is None
        assert report.all_satisfied
        assert report.learner == "mgoig-exact"

    def test_erm_never_errs_on_the_zero_target(self, square_task, singleton_groups_2, square_class):
        predictor = ErmPredictor(square_class, singleton_groups_2)

        assert expected_group_errors(predictor, square_task, singleton_groups_2, 1) == [0, 0]

    def test_missing_row(self, exact_predictor, square_task, singleton_groups_2, square_class):
        report = prediction_error(exact_predictor, square_task, singleton_groups_2, square_class, 1)

        with pytest.raises(KeyError):
            report.row(5)


class TestMonteCarlo:
    def test_trials_are_reproducible(self, exact_predictor, square_task, singleton_groups_2):
        first = sampled_group_errors(exact_predictor, square_task, singleton_groups_2, 3, trials=8, seed=2)
        second = sampled_group_errors(exact_predictor, square_task, singleton_groups_2, 3, trials=8, seed=2)

        assert first == second
        assert len(first) == 8

    def test_sup_error_is_constant_for_one_draw(self, exact_predictor, square_task, singleton_groups_2):
        """Either sample leaves one point unseen, so the maximum is always 1/4."""
        report = sup_group_error(exact_predictor, square_task, singleton_groups_2, 1, trials=20)

        row = report.row(None, "sup_group_error")
        assert row.value == pytest.approx(0.25)
        assert row.ci_halfwidth == pytest.approx(0)

    def test_mc_report_carries_halfwidths(self, exact_predictor, square_task, singleton_groups_2, square_class):
        report = prediction_error(
            exact_predictor, square_task, singleton_groups_2, square_class, 1, mode="mc", trials=50, seed=3
        )

        row = report.row(1)
        assert 0 <= row.value <= 0.25
        assert row.ci_halfwidth >= 0
        assert row.bound_satisfied is True
        assert report.mode == "mc"


class TestAudits:
    def test_realizable_pac_audit(self, exact_predictor, square_task, singleton_groups_2, square_class):
        report = pac_audit(
            exact_predictor, square_task, singleton_groups_2, square_class, 1, Fraction(1, 10), trials=20
        )

        assert [row.metric for row in report.rows] == ["err_quantile"] * 2
        assert all(row.value <= 0.25 for row in report.rows)
        assert report.all_satisfied

    def test_agnostic_pac_audit_uses_the_excess(self):
        H = full_cube(1)
        G = GroupFamily.from_strings(["1"])
        task = DiscreteTask(domain_size=1, masses=(Fraction(1),), p_one=(HALF,))

        report = pac_audit(AgnosticMgOigPredictor(H, G), task, G, H, 2, Fraction(1, 10), trials=10)

        row = report.rows[0]
        assert row.metric == "excess_quantile"
        assert row.value == pytest.approx(0)
        assert row.bound_satisfied is True

    def test_prefix_average_audit(self, exact_predictor, square_task, singleton_groups_2, square_class):
        report = prefix_average_audit(
            exact_predictor, square_task, singleton_groups_2, square_class, 4, Fraction(1, 10), trials=10
        )

        assert report.learner == "prefixes(mgoig-exact)"
        assert {row.metric for row in report.rows} == {"prefix_average_quantile"}
