"""L1(P) covers of a group family and the multi-group relevant covering number."""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from concepts.domain import GroupFamily
from concepts.vc import group_family_vc_dimension
from constants import MAX_COVER_BRUTE_FORCE
from core.errors import EpsilonOutOfRangeError
from evaluation.bounds import packing_bound
from evaluation.task import DiscreteTask

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoverReport:
    cover: GroupFamily
    packing_bound: float

    @property
    def within_bound(self) -> bool:
        return len(self.cover) <= self.packing_bound


@dataclass(frozen=True)
class CoveringNumber:
    """Size and witness of the smallest almost-containing subfamily; exact is False for the greedy fallback."""

    value: int
    witness: GroupFamily
    exact: bool


def l1_distance(task: DiscreteTask, g: int, h: int) -> Fraction:
    """sum_x |g(x) - h(x)| P(x) = P(g xor h)."""
    return task.mass(g ^ h)


def uncovered_mass(task: DiscreteTask, g: int, h: int) -> Fraction:
    """P(g minus h)."""
    return task.mass(g & ~h)


def _check_epsilon(epsilon: Fraction) -> None:
    if not 0 < epsilon < 1:
        error_msg = f"Covering needs epsilon in (0, 1), got {epsilon}."
        logger.error(error_msg)
        raise EpsilonOutOfRangeError(error_msg)


def greedy_l1_cover(G: GroupFamily, task: DiscreteTask, epsilon: Fraction) -> CoverReport:
    """Keeps each group farther than epsilon from every group kept so far.

    The kept groups form a maximal epsilon-packing, hence an epsilon-cover. Its size is
    checked against e (d_G + 1) (2e/epsilon)^d_G with a logged warning only.
    """
    _check_epsilon(epsilon)
    chosen: List[int] = []
    for g in G:
        if all(l1_distance(task, g, kept) > epsilon for kept in chosen):
            chosen.append(g)
    bound = packing_bound(group_family_vc_dimension(G), epsilon)
    report = CoverReport(cover=GroupFamily.of(chosen, G.length), packing_bound=bound)
    if not report.within_bound:
        logger.warning(f"Greedy cover of size {len(chosen)} exceeds the packing bound {bound:.3f}.")
    return report


def _covers_all(task: DiscreteTask, members: Tuple[int, ...], subset: Tuple[int, ...], epsilon: Fraction) -> bool:
    return all(any(uncovered_mass(task, g, t) <= epsilon for t in subset) for g in members)


def _greedy_set_cover(task: DiscreteTask, members: Tuple[int, ...], epsilon: Fraction) -> List[int]:
    uncovered = set(members)
    picked: List[int] = []
    while uncovered:
        best = max(
            members,
            key=lambda t: (sum(1 for g in uncovered if uncovered_mass(task, g, t) <= epsilon), -members.index(t)),
        )
        picked.append(best)
        uncovered = {g for g in uncovered if uncovered_mass(task, g, best) > epsilon}
    return picked


def mg_covering_number(G: GroupFamily, task: DiscreteTask, epsilon: Fraction) -> CoveringNumber:
    """Smallest subfamily of the greedy L1 cover almost containing every cover member.

    A member g is almost contained in t when P(g \\ t) <= epsilon.

    Exhaustive over subsets in ascending size when the cover has at most
    MAX_COVER_BRUTE_FORCE members; otherwise a greedy set cover gives an upper bound.
    """
    members = greedy_l1_cover(G, task, epsilon).cover.masks
    if len(members) > MAX_COVER_BRUTE_FORCE:
        logger.warning(
            f"Cover has {len(members)} members (> {MAX_COVER_BRUTE_FORCE}); returning a greedy upper bound."
        )
        picked = _greedy_set_cover(task, members, epsilon)
        return CoveringNumber(value=len(picked), witness=GroupFamily.of(picked, G.length), exact=False)

    for size in range(1, len(members) + 1):
        for subset in itertools.combinations(members, size):
            if _covers_all(task, members, subset, epsilon):
                return CoveringNumber(value=size, witness=GroupFamily.of(subset, G.length), exact=True)
    return CoveringNumber(value=0, witness=GroupFamily(masks=(), length=G.length), exact=True)
