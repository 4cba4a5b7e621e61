from typing import List

import numpy as np

from constants import MC_Z_99


def compute_average(scores: List[float]) -> float:
    """
    Computes the mean of a list of per-trial scores.
    """
    return float(np.mean(scores))


def compute_standard_deviation(scores: List[float]) -> float:
    """
    Computes the sample standard deviation of a list of per-trial scores.

    Uses ddof=1, since the trials are a sample of the sampling distribution. A single
    trial has no spread estimate and yields 0.
    """
    if len(scores) < 2:
        return 0.0
    return float(np.std(scores, ddof=1))


def compute_quantile(scores: List[float], q: float) -> float:
    """
    Empirical q-quantile: the smallest score whose empirical CDF reaches q.
    """
    return float(np.quantile(np.asarray(scores, dtype=float), q, method="inverted_cdf"))


def compute_standard_error(scores: List[float]) -> float:
    return compute_standard_deviation(scores) / float(np.sqrt(len(scores)))


def compute_halfwidth(scores: List[float]) -> float:
    """
    99% normal-approximation half-width of the mean.
    """
    return MC_Z_99 * compute_standard_error(scores)
