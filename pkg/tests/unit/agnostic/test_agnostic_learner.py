"""
Unit tests for the agnostic base predictor.

With H = {0} on one point the capacities equal the credits and are tight, so every edge
goes entirely to its endpoint with more ones: the predictor always says 0.
With H = {0, 1} and no sample, the single edge splits 1/2 - 1/2.
"""

from fractions import Fraction

import numpy as np
import pytest

from agnostic.learner import AgnosticMgOigPredictor, agnostic_solve_and_predict, coordinates_for, solve_agnostic
from concepts.domain import ConceptClass, GroupFamily, LabeledSample
from concepts.generators import full_cube


@pytest.fixture
def full_group_1():
    return GroupFamily.from_strings(["1"])


def agnostic_sample(entries, domain_size):
    return LabeledSample.of(entries, domain_size, require_consistent=False)


class TestCoordinates:
    def test_entries_are_sorted_and_the_test_point_slots_in(self):
        coord_points, labels, test_coord = coordinates_for(agnostic_sample([(2, 1), (0, 0)], 3), 1)

        assert coord_points == (0, 1, 2)
        assert labels == [0, 1]
        assert test_coord == 1

    def test_test_point_goes_last_among_its_repeats(self):
        coord_points, labels, test_coord = coordinates_for(agnostic_sample([(1, 1), (1, 0)], 2), 1)

        assert coord_points == (1, 1, 1)
        assert labels == [0, 1]
        assert test_coord == 2


class TestAgnosticPredictor:
    def test_empty_sample_splits_the_edge(self, full_group_1):
        predictor = AgnosticMgOigPredictor(full_cube(1), full_group_1)

        assert predictor.prob_one(agnostic_sample([], 1), 0) == Fraction(1, 2)

    @pytest.mark.parametrize("entries", [[], [(0, 0)], [(0, 1)], [(0, 1), (0, 0)]])
    def test_single_hypothesis_forces_its_label(self, full_group_1, entries):
        predictor = AgnosticMgOigPredictor(ConceptClass.from_strings(["0"]), full_group_1)

        assert predictor.prob_one(agnostic_sample(entries, 1), 0) == 0

    def test_conflicting_labels_are_accepted(self, square_class, singleton_groups_2):
        predictor = AgnosticMgOigPredictor(square_class, singleton_groups_2)
        p = predictor.prob_one(agnostic_sample([(0, 0), (0, 1), (1, 1)], 2), 1)

        assert 0 <= p <= 1

    def test_solved_instance_is_cached(self, full_group_1):
        first = solve_agnostic(full_cube(1), full_group_1, (0, 0))
        second = solve_agnostic(full_cube(1), full_group_1, (0, 0))

        assert first is second
        assert first.graph.phis == (Fraction(1, 2),)

    def test_predict_with_a_stream(self, full_group_1):
        labels = {
            agnostic_solve_and_predict(full_cube(1), full_group_1, agnostic_sample([], 1), 0, np.random.default_rng(s))
            for s in range(32)
        }

        assert labels == {0, 1}
