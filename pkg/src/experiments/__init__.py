"""Experiment suites, their instances and report generation."""
