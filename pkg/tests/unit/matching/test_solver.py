"""
Unit tests for the augmenting-path matching solver.

Worked instances:
    4-cycle (full cube on two points, singleton groups): every (vertex, group) capacity is
    1/2 in EXACT mode, so each edge splits 1/2 - 1/2; in CEIL mode each edge goes whole to
    its lower endpoint.
    Thresholds path 000 - 001 - 011 - 111 with the full group: density 3/4.
    Overlapping groups {10, 11} on C = {01, 10, 11}: capacities 1/2 and 2/3, LP optimum 11/6 < |E| = 2.
"""

from fractions import Fraction

import pytest

from concepts.generators import full_cube, intervals
from concepts.domain import ConceptClass, GroupFamily
from concepts.realizability import enumerate_group_realizable
from core.errors import NoAugmentingMatchingError
from matching.duality import DualCertificate, trivial_dual, verify_optimality
from matching.linear_program import solve_matching_lp
from matching.matching import is_prediction_sufficient
from matching.network import CapacityMode, build_network
from matching.solver import (
    AugmentStep,
    GroupFlowState,
    find_valid_augmenting_matching,
    is_valid_augmentation,
    solve_matching,
)
from oig.one_inclusion_graph import build_oig


@pytest.fixture
def square_oig(square_class, singleton_groups_2):
    return build_oig(square_class, singleton_groups_2)


@pytest.fixture
def path_oig(thresholds_3, full_group_3):
    return build_oig(thresholds_3, full_group_3)


class TestSolveMatching:
    """Tests for solve_matching."""

    def test_square_exact_is_fractional(self, square_oig):
        """Scale 2: every edge places one unit on each endpoint, 8 unit steps in total."""
        matching, iterations = solve_matching(build_network(square_oig, CapacityMode.EXACT))
        assert matching.value == 4
        assert matching.flows == ((Fraction(1, 2), Fraction(1, 2)),) * 4
        assert not matching.is_integral()
        assert iterations == 8

    def test_square_ceil_is_integral(self, square_oig):
        """Capacity 1: each edge goes whole to its lower endpoint, which still has room."""
        matching, iterations = solve_matching(build_network(square_oig, CapacityMode.CEIL))
        assert matching.value == 4
        assert matching.flows == ((Fraction(1), Fraction(0)),) * 4
        assert matching.is_integral()
        assert iterations == 4

    def test_path_exact(self, path_oig):
        """Limits of 3 units (3/4 at scale 4): 3+1, 2+2, 1+3."""
        matching, _ = solve_matching(build_network(path_oig, CapacityMode.EXACT))
        assert matching.flows == (
            (Fraction(3, 4), Fraction(1, 4)),
            (Fraction(1, 2), Fraction(1, 2)),
            (Fraction(1, 4), Fraction(3, 4)),
        )
        assert is_prediction_sufficient(matching)
        assert matching.is_feasible()

    def test_below_density_strict(self, path_oig, caplog):
        """Four vertices at 1/2 absorb at most 2 < 3 edges."""
        network = build_network(path_oig, CapacityMode.EXPLICIT, [[Fraction(1, 2)]] * 4, check_density=False)
        with pytest.raises(NoAugmentingMatchingError):
            solve_matching(network)
        assert "Matching LP optimum 2 is below |E| = 3" in caplog.text

    def test_below_density_best_effort(self, path_oig):
        network = build_network(path_oig, CapacityMode.EXPLICIT, [[Fraction(1, 2)]] * 4, check_density=False)
        matching, _ = solve_matching(network, strict=False)
        assert matching.value == 2
        assert matching.is_feasible()

    @pytest.mark.parametrize("mode", [CapacityMode.EXACT, CapacityMode.CEIL])
    @pytest.mark.parametrize("masks", [["1111"], ["1000", "0100", "0010", "0001"], ["1100", "0011"]])
    def test_value_equals_edge_count(self, mode, masks):
        """Disjoint groups at or above density always admit a complete, optimal matching."""
        G = GroupFamily.from_strings(masks)
        oig = build_oig(enumerate_group_realizable(intervals(4), G), G)
        network = build_network(oig, mode)
        matching, iterations = solve_matching(network)
        assert matching.value == oig.n_edges
        assert matching.is_feasible()
        assert verify_optimality(matching, trivial_dual(network))
        assert iterations <= network.scale() * oig.n_edges
        if mode is CapacityMode.CEIL:
            assert matching.is_integral()

    @pytest.mark.parametrize("mode", [CapacityMode.EXACT, CapacityMode.CEIL])
    @pytest.mark.parametrize("masks", [["1100", "0110", "0011"], ["1110", "0111"]])
    def test_overlapping_groups_reach_the_lp_optimum(self, mode, masks):
        G = GroupFamily.from_strings(masks)
        oig = build_oig(enumerate_group_realizable(intervals(4), G), G)
        network = build_network(oig, mode)
        matching, iterations = solve_matching(network, strict=False)
        assert matching.is_feasible()
        assert verify_optimality(matching, solve_matching_lp(network).certificate)
        assert iterations <= network.scale() * oig.n_edges

    def test_full_cube(self):
        oig = build_oig(full_cube(3), GroupFamily.from_strings(["111"]))
        matching, _ = solve_matching(build_network(oig, CapacityMode.EXACT))
        assert matching.value == 12

    def test_fractional_optimum_under_integer_capacities(self):
        """Capacity 1 lets every vertex take one whole edge (8 of 12); only split edges reach 12."""
        G = GroupFamily.from_strings(["011", "010", "110", "101"])
        network = build_network(build_oig(full_cube(3), G), CapacityMode.CEIL)
        assert network.is_integral()

        matching, _ = solve_matching(network)

        assert matching.value == 12
        assert is_prediction_sufficient(matching)
        assert not matching.is_integral()
        assert verify_optimality(matching, solve_matching_lp(network).certificate)


class TestLpShortfall:
    """Overlapping groups whose LP optimum stays below |E|.

    Edge 0 joins 01 - 11 (groups {10} and {11}), edge 1 joins 10 - 11 (group {11} only).
    Vertex 11 takes at most 2/3 over both edges, so some edge mass is always unassigned.
    """

    @pytest.fixture
    def network(self):
        G = GroupFamily.from_strings(["10", "11"])
        return build_network(build_oig(ConceptClass.from_strings(["01", "10", "11"]), G), CapacityMode.EXACT)

    def test_capacities(self, network):
        assert network.capacity(0, 0) == Fraction(1, 2)
        assert network.capacity(0, 1) == Fraction(2, 3)
        assert network.scale() == 6

    def test_strict_raises(self, network, caplog):
        with pytest.raises(NoAugmentingMatchingError, match="Matching LP optimum 11/6 is below"):
            solve_matching(network)
        assert "1/6 of edge mass stays unassigned" in caplog.text

    def test_best_effort_keeps_the_optimum(self, network):
        """Direct assignment places 3 + 3 units on edge 0 and 4 + 1 on edge 1, which is already optimal."""
        matching, iterations = solve_matching(network, strict=False)

        assert matching.value == Fraction(11, 6)
        assert matching.flows == ((Fraction(1, 2), Fraction(1, 2)), (Fraction(2, 3), Fraction(1, 6)))
        assert iterations == 11
        assert matching.is_feasible()
        assert not is_prediction_sufficient(matching)

    def test_dual_certificate_matches(self, network):
        """z = 1 on (01, {10}), (10, {11}) and (11, {11}) covers both edges at cost 1/2 + 2/3 + 2/3."""
        zero = Fraction(0)
        certificate = DualCertificate(
            network=network,
            y=(zero, zero),
            z=((Fraction(1), zero, zero), (zero, Fraction(1), Fraction(1))),
        )
        matching, _ = solve_matching(network, strict=False)
        assert certificate.value == Fraction(11, 6)
        assert verify_optimality(matching, certificate)
        assert not verify_optimality(matching, trivial_dual(network))


class TestAugmentationInvariants:
    """Every augmentation adds one unit and leaves each group-specific flow feasible."""

    @staticmethod
    def watch(network):
        seen = []

        def observer(state, augmentation):
            seen.append(
                (
                    state.value_units,
                    augmentation.steps[0].source,
                    all(state.is_group_feasible(gid) for gid in range(network.n_groups)),
                    state.to_matching().is_feasible(),
                )
            )

        matching, iterations = solve_matching(network, observer=observer)
        return seen, matching, iterations

    def test_cube_needs_one_shift(self):
        """Greedy placement leaves one unit of edge 010 - 011; it enters 010 and pushes edge 010 - 110 to 110."""
        network = build_network(build_oig(full_cube(3), GroupFamily.from_strings(["111"])), CapacityMode.EXACT)
        seen, matching, iterations = self.watch(network)

        assert [units for units, *_ in seen] == [24]
        assert iterations == 24
        assert is_prediction_sufficient(matching)

    @pytest.mark.parametrize("mode", [CapacityMode.EXACT, CapacityMode.CEIL])
    @pytest.mark.parametrize("masks", [["111"], ["100", "010", "001"], ["110", "001"]])
    def test_each_iteration(self, mode, masks):
        G = GroupFamily.from_strings(masks)
        network = build_network(build_oig(enumerate_group_realizable(full_cube(3), G), G), mode)
        seen, _, iterations = self.watch(network)

        direct = iterations - len(seen)
        assert [units for units, *_ in seen] == list(range(direct + 1, direct + len(seen) + 1))
        assert all(source is None for _, source, _, _ in seen)
        assert all(groups_ok and matching_ok for _, _, groups_ok, matching_ok in seen)


class TestAugmentation:
    """Tests for the augmenting-matching search on a hand-made state.

    Path with CEIL capacity 1: edge 0 (000-001) sits at 001, edge 2 (011-111) at 011, and
    edge 1 (001-011) is unassigned with both endpoints full. The only way forward moves
    edge 0 back to 000.
    """

    @pytest.fixture
    def stuck_state(self, path_oig):
        state = GroupFlowState(build_network(path_oig, CapacityMode.CEIL))
        state.units[0][1] = 1
        state.loads[1][0] = 1
        state.units[2][0] = 1
        state.loads[2][0] = 1
        return state

    def test_finds_shifting_path(self, stuck_state):
        augmentation = find_valid_augmenting_matching(stuck_state)
        assert augmentation.group == 0
        assert augmentation.steps == (AugmentStep(eid=1, source=None, target=1), AugmentStep(eid=0, source=1, target=0))
        assert augmentation.arcs == (
            ("s", ("e", 1)),
            (("e", 1), ("v", 1)),
            (("v", 1), ("e", 0)),
            (("e", 0), ("v", 0)),
            (("v", 0), "t"),
        )

    def test_apply_completes_matching(self, stuck_state):
        stuck_state.apply(find_valid_augmenting_matching(stuck_state))
        assert stuck_state.value == 3
        assert stuck_state.is_group_feasible(0)
        assert stuck_state.to_matching().is_feasible()
        assert find_valid_augmenting_matching(stuck_state) is None

    def test_validity_rules(self, stuck_state):
        """A fresh unit into a full vertex, or a move of a unit the vertex does not hold, is invalid."""
        assert not is_valid_augmentation(stuck_state, (AugmentStep(eid=1, source=None, target=2),))
        assert not is_valid_augmentation(
            stuck_state, (AugmentStep(eid=1, source=None, target=1), AugmentStep(eid=2, source=1, target=3))
        )
        assert not is_valid_augmentation(stuck_state, ())

    def test_group_flow(self, stuck_state):
        flows = stuck_state.group_flow(0)
        assert flows[("s", ("e", 0))] == 1
        assert flows[(("e", 0), ("v", 1))] == 1
        assert flows[(("v", 1), "t")] == 1
        assert flows[(("v", 0), "t")] == 0
