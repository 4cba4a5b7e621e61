"""
Unit tests for build_oig and the Oig accessors.

The thresholds class on three points is the path 000 - 001 - 011 - 111; the full cube on
two points is the 4-cycle 00 - 01 - 11 - 10.
"""

import json

import pytest

from concepts.domain import Behavior, GroupFamily
from concepts.generators import full_cube
from oig.one_inclusion_graph import OigEdge, build_oig, g_relevant_edges


class TestBuildOig:
    """Tests for build_oig."""

    def test_thresholds_path(self, thresholds_3):
        """Edges are listed by (u, coord): 000-001 on x2, 001-011 on x1, 011-111 on x0."""
        oig = build_oig(thresholds_3)
        assert oig.n_vertices == 4
        assert oig.edges == (OigEdge(0, 1, 2), OigEdge(1, 2, 1), OigEdge(2, 3, 0))
        assert oig.group_index == ()

    def test_square(self, square_class, singleton_groups_2):
        """00-10 and 01-11 differ at x0; 00-01 and 10-11 at x1."""
        oig = build_oig(square_class, singleton_groups_2)
        assert oig.edges == (OigEdge(0, 2, 0), OigEdge(0, 1, 1), OigEdge(1, 3, 0), OigEdge(2, 3, 1))
        assert oig.group_index == ((0, 2), (1, 3))
        assert oig.edge_groups == ((0,), (1,), (0,), (1,))

    def test_full_cube_edge_count(self):
        """The 3-cube has 3 * 2^2 = 12 edges."""
        assert build_oig(full_cube(3)).n_edges == 12

    def test_group_family_on_other_domain(self, thresholds_3, singleton_groups_2):
        with pytest.raises(ValueError):
            build_oig(thresholds_3, singleton_groups_2)


class TestOigAccessors:
    """Tests for the vertex and edge lookups."""

    def test_incident_edges_and_other_endpoint(self, square_class, singleton_groups_2):
        oig = build_oig(square_class, singleton_groups_2)
        assert oig.incident_edges[0] == (0, 1)
        assert oig.incident_edges[3] == (2, 3)
        assert oig.other_endpoint(0, 0) == 2
        assert oig.other_endpoint(0, 2) == 0

    def test_edge_at(self, thresholds_3):
        oig = build_oig(thresholds_3)
        assert oig.edge_at(1, 1) == 1
        assert oig.edge_at(0, 0) is None

    def test_index_of(self, thresholds_3):
        oig = build_oig(thresholds_3)
        assert oig.index_of(Behavior.from_string("011")) == 2
        assert oig.index_of(Behavior.from_string("101")) is None

    def test_g_relevant_edges(self, thresholds_3):
        oig = build_oig(thresholds_3, GroupFamily.from_strings(["100", "011"]))
        assert g_relevant_edges(oig, 0b100) == [2]
        assert g_relevant_edges(oig, 0b011) == [0, 1]
        assert oig.group_index == ((2,), (0, 1))


class TestExports:
    def test_json(self, square_class, singleton_groups_2):
        data = json.loads(build_oig(square_class, singleton_groups_2).to_json())
        assert data["vertices"] == ["00", "01", "10", "11"]
        assert data["edges"][0] == {"id": 0, "u": 0, "v": 2, "coord": 0}
        assert data["groups"] == ["10", "01"]
        assert data["group_index"] == [[0, 2], [1, 3]]

    def test_dot(self, thresholds_3):
        dot = build_oig(thresholds_3).to_dot()
        assert dot.startswith("graph oig {")
        assert 'v0 [label="000"];' in dot
        assert 'v2 -- v3 [label="x0"];' in dot
        assert dot.endswith("}\n")
