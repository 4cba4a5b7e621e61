"""Unit tests for the agnostic audit report."""

import logging

import pytest

from agnostic.audit import audit_agnostic, coordinate_group, phi_bound
from concepts.domain import ConceptClass, GroupFamily
from concepts.generators import full_cube


class TestAuditAgnostic:
    def test_single_hypothesis_report(self, caplog):
        H = ConceptClass.from_strings(["0"])
        G = GroupFamily.from_strings(["1"])

        with caplog.at_level(logging.INFO):
            report = audit_agnostic(H, G, (0, 0))

        assert report["coord_points"] == [0, 0]
        assert report["coordinate_groups"] == ["11"]
        assert report["phi"] == ["0/1"]
        assert report["groups"][0]["coordinates"] == [0, 1]
        assert report["groups"][0]["d_H_g"] == 0
        assert report["groups"][0]["bound_satisfied"] is True
        assert report["vertices"][0] == {"vertex": "00", "credits": [0], "capacities": ["0/1"]}
        assert report["vertices"][3] == {"vertex": "11", "credits": [2], "capacities": ["2/1"]}
        assert "Audited agnostic graph on 2 coordinates" in caplog.text

    def test_group_missing_from_the_coordinates(self, square_class, singleton_groups_2):
        """Group {x1} has no coordinate among (0, 0), so its Phi is reported as 0."""
        report = audit_agnostic(square_class, singleton_groups_2, (0, 0))

        second = report["groups"][1]
        assert second["coordinates"] == []
        assert second["phi"] == "0/1"
        assert len(report["coordinate_groups"]) == 1

    def test_two_hypotheses_within_the_bound(self):
        report = audit_agnostic(full_cube(1), GroupFamily.from_strings(["1"]), (0, 0))

        row = report["groups"][0]
        assert row["phi"] == "1/2"
        assert row["d_H_g"] == 1
        assert row["bound"] == pytest.approx(16 * 2**0.5)


def test_coordinate_group_projects_the_mask(singleton_groups_2):
    assert coordinate_group(singleton_groups_2, 0, (0, 1, 0)) == 0b101
    assert coordinate_group(singleton_groups_2, 1, (0, 0)) == 0


def test_phi_bound():
    assert phi_bound(4, 1) == 32
