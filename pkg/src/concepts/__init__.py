"""Finite domains, behaviors, concept classes, group families and VC dimensions."""
