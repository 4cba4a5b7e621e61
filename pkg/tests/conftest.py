"""Pytest configuration and shared fixtures."""

import copy
from fractions import Fraction

import pytest

from concepts.domain import ConceptClass, GroupFamily
from concepts.generators import full_cube, thresholds
from evaluation.task import DiscreteTask
from schemas.config_schemas import ExperimentConfig

# ==============================================================================
# 1. CONSTANTS & DATA FIXTURES
#    - Small instances whose densities and matchings are worked out by hand.
# ==============================================================================


@pytest.fixture
def square_class():
    """The full cube on two points: 00, 01, 10, 11 (the OIG is a 4-cycle)."""
    return full_cube(2)


@pytest.fixture
def singleton_groups_2():
    """Groups {x0} and {x1} on a two-point domain."""
    return GroupFamily.from_strings(["10", "01"])


@pytest.fixture
def thresholds_3():
    """Thresholds on three ordered points: 000, 001, 011, 111 (a path of 4 vertices)."""
    return thresholds(3)


@pytest.fixture
def full_group_3():
    return GroupFamily.from_strings(["111"])


@pytest.fixture
def uniform_task_3(thresholds_3):
    """Uniform marginal on three points labeled by the threshold 011."""
    return DiscreteTask(domain_size=3, masses=(Fraction(1, 3),) * 3, target=thresholds_3.members[2])


@pytest.fixture
def explicit_class():
    """A three-member class on three points used where generators would hide the arithmetic."""
    return ConceptClass.from_strings(["000", "100", "110"])


# ==============================================================================
# 2. CONFIGURATION FIXTURES
#    - Raw dictionaries validated against ExperimentConfig in individual tests.
# ==============================================================================


@pytest.fixture
def base_experiment_config():
    """
    Returns a valid transductive experiment configuration dictionary.
    Configuration is modified in individual tests as needed.
    """
    return {
        "version": "1.0",
        "experiment_id": "test-transductive",
        "experiment": "transductive",
        "description": "Thresholds on three points.",
        "domain": {"m": 3},
        "hypotheses": {"kind": "thresholds"},
        "groups": {"kind": "full"},
        "task": {"kind": "realizable", "target": "011"},
        "learner": {"kind": "mgoig", "capacity_mode": "exact"},
        "n_grid": [1, 2, 3],
        "sample_points": [0, 1, 2],
        "seed": 1,
    }


@pytest.fixture
def experiment_config(base_experiment_config):
    return ExperimentConfig(**copy.deepcopy(base_experiment_config))


@pytest.fixture
def experiments_dir(tmp_path):
    """Creates and returns an empty directory for experiment files."""
    directory = tmp_path / "configs" / "experiments"
    directory.mkdir(parents=True)
    return directory


@pytest.fixture
def results_dir(tmp_path):
    directory = tmp_path / "results"
    directory.mkdir()
    return directory
