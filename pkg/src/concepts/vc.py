"""Brute-force VC dimensions of finite classes and group families."""

import logging
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from concepts.domain import ConceptClass, GroupFamily, mask_from_points, points_of_mask

logger = logging.getLogger(__name__)


def shatters(bit_vectors: Iterable[int], length: int, points: Sequence[int]) -> bool:
    """True iff the vectors realize all 2^k patterns on the k listed points."""
    submask = mask_from_points(points, length)
    patterns = {bits & submask for bits in bit_vectors}
    return len(patterns) == 1 << len(points)


def _vc_over(bit_vectors: Sequence[int], length: int, candidates: Sequence[int]) -> int:
    # Shattering is hereditary, so the first level without a shattered set ends the search.
    best = 0
    for k in range(1, len(candidates) + 1):
        if 1 << k > len(bit_vectors):
            break
        if not any(shatters(bit_vectors, length, subset) for subset in combinations(candidates, k)):
            break
        best = k
    return best


def vc_dimension(concepts: ConceptClass) -> int:
    """Largest k such that some k points are shattered by the class."""
    bit_vectors = [member.bits for member in concepts]
    return _vc_over(bit_vectors, concepts.length, range(concepts.length))


def vc_restricted(concepts: ConceptClass, g: int) -> int:
    """VC dimension with candidate shattered sets drawn from the points of group mask g only.

    This is d_{H|g}; the full-domain mask gives back vc_dimension.
    """
    if g == 0:
        raise ValueError("vc_restricted needs a nonempty group mask.")
    bit_vectors = [member.bits for member in concepts]
    return _vc_over(bit_vectors, concepts.length, points_of_mask(g, concepts.length))


def vc_restricted_sup(concepts: ConceptClass, groups: GroupFamily) -> int:
    """sup over the family of d_{H|g}; 0 for an empty family."""
    return max((vc_restricted(concepts, g) for g in groups), default=0)


def group_family_vc_dimension(groups: GroupFamily) -> int:
    """VC dimension d_G of the family, reading each group as an indicator concept."""
    if len(groups) == 0:
        return 0
    return _vc_over(list(groups.masks), groups.length, range(groups.length))


def sauer_bound(n: int, d: int) -> int:
    """Sum_{i <= d} C(n, i): the most behaviors a class of VC dimension d has on n points."""
    return sum(comb(n, i) for i in range(min(d, n) + 1))
