"""Agnostic one-inclusion graphs with credits and discounted densities."""
