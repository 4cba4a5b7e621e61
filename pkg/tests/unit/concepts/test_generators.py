"""
Unit tests for the class and group-family generators.
"""

import pytest

from concepts.generators import (
    build_class,
    build_groups,
    full_cube,
    hierarchical_masks,
    intervals,
    singletons,
    thresholds,
)
from schemas.config_schemas import ClassDescriptor, GroupDescriptor


class TestClassGenerators:
    def test_thresholds(self):
        assert thresholds(3).to_strings() == ["000", "001", "011", "111"]

    def test_intervals_include_empty_run(self):
        """Six runs on three points plus the empty run."""
        assert len(intervals(3)) == 7
        assert "101" not in intervals(3).to_strings()

    def test_singletons(self):
        assert singletons(3).to_strings() == ["000", "001", "010", "100"]

    def test_full_cube(self):
        assert len(full_cube(3)) == 8


class TestBuildClass:
    """Tests for build_class."""

    def test_explicit(self):
        descriptor = ClassDescriptor(kind="explicit", bits=["01", "10"])
        assert build_class(descriptor, 2).to_strings() == ["01", "10"]

    def test_explicit_wrong_length(self):
        descriptor = ClassDescriptor(kind="explicit", bits=["011"])
        with pytest.raises(ValueError):
            build_class(descriptor, 2)

    def test_named_kinds(self):
        assert build_class(ClassDescriptor(kind="thresholds"), 3) == thresholds(3)
        assert build_class(ClassDescriptor(kind="full_cube"), 2) == full_cube(2)


class TestBuildGroups:
    """Tests for build_groups and the hierarchical family."""

    def test_full_and_singletons(self):
        assert build_groups(GroupDescriptor(kind="full"), 3).to_strings() == ["111"]
        assert build_groups(GroupDescriptor(kind="singletons"), 3).to_strings() == ["100", "010", "001"]

    def test_prefixes(self):
        assert build_groups(GroupDescriptor(kind="prefixes"), 3).to_strings() == ["100", "110", "111"]

    def test_intervals(self):
        assert len(build_groups(GroupDescriptor(kind="intervals"), 3)) == 6

    def test_hierarchical_layout(self):
        """Two roots of blocks {0,1} and {2,3}; each drops its last point once."""
        family = build_groups(GroupDescriptor(kind="hierarchical", roots=2, depth=1), 4)
        assert family.to_strings() == ["1100", "0011", "1000", "0010"]

    def test_hierarchical_counts(self):
        """Three roots with five nested subgroups each: 3 + 15 = 18 groups on 18 points."""
        assert len(hierarchical_masks(3, 5, 18)) == 18

    def test_hierarchical_needs_room(self):
        with pytest.raises(ValueError):
            hierarchical_masks(3, 5, 17)

    def test_explicit_wrong_length(self):
        with pytest.raises(ValueError):
            build_groups(GroupDescriptor(kind="explicit", bits=["11"]), 3)
