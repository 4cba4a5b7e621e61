"""Utility functions for the project."""

__all__ = []
