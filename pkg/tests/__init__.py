"""Test suite for the mgoig package."""
