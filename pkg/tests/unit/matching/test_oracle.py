"""
Unit tests for the independent solver checks.
"""

from fractions import Fraction
from unittest.mock import patch

import pytest

from concepts.generators import full_cube
from concepts.domain import GroupFamily
from core.errors import InstanceTooLargeError
from matching.network import CapacityMode, build_network
from matching.oracle import brute_force_optimum, group_flow_graph, group_max_flow, saturating_flow_check
from matching.solver import solve_matching
from oig.one_inclusion_graph import build_oig


@pytest.fixture
def square_oig(square_class, singleton_groups_2):
    return build_oig(square_class, singleton_groups_2)


@pytest.fixture
def path_oig(thresholds_3, full_group_3):
    return build_oig(thresholds_3, full_group_3)


class TestBruteForceOptimum:
    """Tests for brute_force_optimum."""

    @pytest.mark.parametrize("mode", [CapacityMode.EXACT, CapacityMode.CEIL])
    def test_agrees_with_solver(self, square_oig, mode):
        network = build_network(square_oig, mode)
        matching, _ = solve_matching(network)
        assert brute_force_optimum(network) == matching.value == 4

    def test_below_density(self, path_oig):
        """Four vertices with capacity 1/2 hold at most 2 units."""
        network = build_network(path_oig, CapacityMode.EXPLICIT, [[Fraction(1, 2)]] * 4, check_density=False)
        assert brute_force_optimum(network) == 2

    def test_path_exact(self, path_oig):
        assert brute_force_optimum(build_network(path_oig, CapacityMode.EXACT)) == 3

    def test_too_many_edges(self):
        network = build_network(build_oig(full_cube(3), GroupFamily.from_strings(["111"])), CapacityMode.CEIL)
        with pytest.raises(InstanceTooLargeError):
            brute_force_optimum(network)

    def test_denominator_cap(self, path_oig):
        with patch("matching.oracle.ORACLE_MAX_DENOMINATOR", 2):
            with pytest.raises(InstanceTooLargeError):
                brute_force_optimum(build_network(path_oig, CapacityMode.EXACT))


class TestGroupMaxFlow:
    """Tests for the networkx group flow check."""

    def test_graph_shape(self, square_oig):
        """Group {x0} sees edges 0 and 2; capacities are scaled by 2."""
        graph, scale = group_flow_graph(build_network(square_oig, CapacityMode.EXACT), 0)
        assert scale == 2
        assert graph["s"][("e", 0)]["capacity"] == 2
        assert graph[("v", 0)]["t"]["capacity"] == 1
        assert ("e", 1) not in graph

    def test_saturates_at_density(self, square_oig):
        network = build_network(square_oig, CapacityMode.EXACT)
        assert group_max_flow(network, 0) == 2
        assert saturating_flow_check(network, 0)
        assert saturating_flow_check(network, 1)

    def test_below_density(self, path_oig):
        network = build_network(path_oig, CapacityMode.EXPLICIT, [[Fraction(1, 2)]] * 4, check_density=False)
        assert group_max_flow(network, 0) == 2
        assert not saturating_flow_check(network, 0)
