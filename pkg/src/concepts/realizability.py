"""Group-realizable concepts, task realizability and class projections."""

import logging
from typing import TYPE_CHECKING, List, Sequence, Set, Tuple

import networkx as nx

from concepts.domain import Behavior, ConceptClass, GroupFamily, mask_from_points
from constants import MAX_ENUMERATION_POINTS
from core.errors import DomainTooLargeError

if TYPE_CHECKING:
    from evaluation.task import DiscreteTask

logger = logging.getLogger(__name__)


def project_class(concepts: ConceptClass, points: Sequence[int]) -> ConceptClass:
    """Restricts every member to the listed points, deduplicated and canonically ordered."""
    return ConceptClass.of((member.restrict(points) for member in concepts), len(points))


def _patterns_per_group(H: ConceptClass, G: GroupFamily) -> List[Tuple[int, Set[int]]]:
    return [(g, {h.bits & g for h in H}) for g in G]


def enumerate_group_realizable(H: ConceptClass, G: GroupFamily) -> ConceptClass:
    """All labelings c of the domain such that every group g has some h in H with c = h on g.

    Brute force over the 2^m labelings; an empty family leaves every labeling realizable.

    Raises:
        DomainTooLargeError: If m exceeds MAX_ENUMERATION_POINTS.
        ValueError: If H and G live on different domains.
    """
    m = H.length
    if len(G) and G.length != m:
        raise ValueError(f"Class is defined on {m} points but the group family on {G.length}.")
    if m > MAX_ENUMERATION_POINTS:
        error_msg = f"Enumerating 2^{m} labelings exceeds the cap of {MAX_ENUMERATION_POINTS} points."
        logger.error(error_msg)
        raise DomainTooLargeError(error_msg)

    checks = _patterns_per_group(H, G)
    realizable = [c for c in range(1 << m) if all((c & g) in patterns for g, patterns in checks)]
    logger.debug(f"{len(realizable)} of {1 << m} labelings are group-realizable (|H|={len(H)}, |G|={len(G)}).")
    return ConceptClass.from_bits(realizable, m)


def is_group_realizable_task(task: "DiscreteTask", H: ConceptClass, G: GroupFamily) -> bool:
    """True iff every group has a hypothesis agreeing with the target on the support points inside it."""
    if task.target is None:
        return False
    support = mask_from_points(task.support, task.domain_size)
    target = task.target.bits
    for g in G:
        relevant = g & support
        if not any((h.bits ^ target) & relevant == 0 for h in H):
            return False
    return True


def separates(H: ConceptClass, point: int) -> bool:
    """True iff H labels `point` both ways."""
    return len({h.label(point) for h in H}) == 2


def separated_points_number(H: ConceptClass, G: GroupFamily, epsilon) -> Tuple[int, List[int]]:
    """Largest I <= 1/epsilon of points with pairwise-disjoint group memberships, each labeled both ways by H.

    Points that conflict (share a group) are joined in a conflict graph; the answer is a
    maximum independent set of it among the separated points, i.e. a maximum clique of the
    complement. Returns I together with a witness point list.
    """
    cap = int(1 / epsilon)
    candidates = [x for x in range(H.length) if separates(H, x)]
    memberships = {x: set(G.groups_of_point(x)) for x in candidates}

    conflicts = nx.Graph()
    conflicts.add_nodes_from(candidates)
    for i, x in enumerate(candidates):
        for y in candidates[i + 1 :]:
            if memberships[x] & memberships[y]:
                conflicts.add_edge(x, y)

    if not candidates:
        return 0, []
    clique, _ = nx.max_weight_clique(nx.complement(conflicts), weight=None)
    witness = sorted(clique)[:cap]
    logger.debug(f"Separated-points number {len(witness)} (uncapped {len(clique)}, cap {cap}).")
    return len(witness), witness


def least_member(concepts: ConceptClass) -> Behavior:
    """Lexicographically least behavior of a class."""
    return concepts.members[0]
