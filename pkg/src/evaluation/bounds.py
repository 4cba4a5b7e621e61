"""Closed-form guarantee values audited by the experiments.

Expectation bounds are exact rationals; high-probability bounds involve logarithms and
square roots and are floats.
"""

import math
from fractions import Fraction

from constants import AGNOSTIC_CONSTANT, PAC_REALIZABLE_CONSTANT, PREFIX_AVERAGE_CONSTANT


def transductive_bound(d: int, n: int) -> Fraction:
    """d_{H|g} / n."""
    return Fraction(d, n)


def prediction_bound(d: int, n: int) -> Fraction:
    """d_{H|g} / (n + 1)."""
    return Fraction(d, n + 1)


def pac_realizable_bound(d: int, n: int, delta) -> float:
    """9.64 * (d_{H|g}/(n+1) + log(2/delta)/n) for the prefix-majority aggregate."""
    return PAC_REALIZABLE_CONSTANT * (d / (n + 1) + math.log(2 / float(delta)) / n)


def prefix_average_bound(d: int, n: int, delta) -> float:
    """4.82 * (d_{H|g}/(n+1) + log(2/delta)/n) for the average error of the prefix predictors."""
    return PREFIX_AVERAGE_CONSTANT * (d / (n + 1) + math.log(2 / float(delta)) / n)


def agnostic_excess_bound(d: int, n: int, delta) -> float:
    """16 * sqrt((4 d_{H|g} + log(2/delta)) / n)."""
    return AGNOSTIC_CONSTANT * math.sqrt((4 * d + math.log(2 / float(delta))) / n)


def agnostic_transductive_bound(d: int, n: int) -> float:
    """16 * sqrt(d_{H|g} / n)."""
    return AGNOSTIC_CONSTANT * math.sqrt(d / n)


def packing_bound(d: int, epsilon) -> float:
    """e (d + 1) (2e / epsilon)^d: the size an L1(P) epsilon-packing of a VC-d family cannot exceed."""
    return math.e * (d + 1) * (2 * math.e / float(epsilon)) ** d


def lower_bound_n1(d: int, epsilon) -> float:
    """(d_{H|G} - 1) / (4 epsilon): the PAC-style part of the lower bound."""
    return (d - 1) / (4 * float(epsilon))


def lower_bound_n2(points: int, epsilon) -> float:
    """ln(I / 2) / (2 epsilon): below this many samples some disjoint point is likely unseen."""
    return math.log(points / 2) / (2 * float(epsilon))


def geometric_tail_threshold(k: int, delta, t: float) -> float:
    """(k ln(k + 1) - k t) / delta."""
    return (k * math.log(k + 1) - k * t) / float(delta)


def erm_rate(d: int, n: int) -> float:
    """d log(n) / n, the rate of ERM the comparison table is read against."""
    return d * math.log(n) / n if n > 1 else float(d)


def mgoig_rate(d: int, n: int) -> float:
    """d / n."""
    return d / n if n > 0 else float(d)
