"""Multi-group one-inclusion graph learner on finite domains."""

__version__ = "0.1.0"
