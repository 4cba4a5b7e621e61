"""Exact multi-group transductive errors, realizable and agnostic.

The realizable error has a closed form read off the solved instance on the distinct sample
points; it is cross-checked against the average over every permutation of the sample
indices, which is what the leave-last-out definition prescribes.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from agnostic.graph import phi
from agnostic.learner import AgnosticMgOigPredictor, solve_agnostic
from concepts.domain import ConceptClass, GroupFamily, LabeledSample, point_bit, restrict_bits
from constants import MAX_PERMUTATION_N
from core.errors import InconsistentSampleError, TransductiveMismatchError
from learners.mgoig import LearnerInstance, MgOigPredictor, consistent_vertices, solve_projection
from learners.predictor import Predictor
from matching.network import CapacityMode

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransductiveReport:
    """Closed form, permutation average (None above the permutation cap) and the capacity bound."""

    closed_form: Fraction
    permutation_average: Optional[Fraction]
    capacity_bound: Fraction


def _in_group(g: int, x: int, domain_size: int) -> bool:
    return bool(g & point_bit(x, domain_size))


def _group_capacity(instance: LearnerInstance, g: int, domain_size: int) -> Fraction:
    """Capacity of the projected group, 0 when g misses U; capacities are uniform in the vertex."""
    projected = restrict_bits(g, domain_size, instance.points)
    if not projected or instance.oig.n_vertices == 0:
        return Fraction(0)
    gid = instance.oig.groups.masks.index(projected)
    return instance.network.capacity(0, gid)


def closed_form_transductive_error(
    H: ConceptClass, G: GroupFamily, sample: LabeledSample, g: int, mode: CapacityMode = CapacityMode.CEIL
) -> Fraction:
    """(1/n) * sum over entries i with x_i in g of the orientation of e_i towards v.

    The orientation is f_{e_i, v} plus half the edge mass the matching leaves unassigned.

    v is the vertex of the sample labeling on U = distinct sample points and e_i the edge
    leaving v along x_i. Points drawn more than once stay labeled in S^{-i} and never err.
    """
    n = sample.n
    if n == 0:
        raise ValueError("The transductive error needs a nonempty sample.")
    points = tuple(sample.distinct_points())
    instance = solve_projection(H, G, points, mode)
    consistent = consistent_vertices(instance.oig, points, sample.label_of())
    if len(consistent) != 1:
        error_msg = f"Sample labeling on {list(points)} is not a group-realizable concept."
        logger.error(error_msg)
        raise InconsistentSampleError(error_msg)
    v = consistent[0]

    multiplicity = sample.multiplicity()
    total = Fraction(0)
    for x, _ in sample.entries:
        if multiplicity[x] > 1 or not _in_group(g, x, sample.domain_size):
            continue
        eid = instance.oig.edge_at(v, instance.local(x))
        if eid is not None:
            total += instance.matching.orientation(eid, v)
    return total / n


def permutation_transductive_error(predictor: Predictor, sample: LabeledSample, g: int) -> Fraction:
    """(1/n!) * sum over index permutations of P[A(S_sigma^{-n})(x_sigma(n)) != y_sigma(n) and x in g]."""
    n = sample.n
    total = Fraction(0)
    count = 0
    for order in itertools.permutations(range(n)):
        permuted = LabeledSample(
            tuple(sample.entries[i] for i in order), sample.domain_size, sample.require_consistent
        )
        x, y = permuted.entries[-1]
        count += 1
        if _in_group(g, x, sample.domain_size):
            total += predictor.mistake_probability(permuted.prefix(n - 1), x, y)
    return total / count


def transductive_error_exact(
    H: ConceptClass,
    G: GroupFamily,
    sample: LabeledSample,
    g: int,
    mode: CapacityMode = CapacityMode.CEIL,
) -> TransductiveReport:
    """Closed-form error, cross-checked by the n! permutation average for n <= MAX_PERMUTATION_N.

    Raises:
        TransductiveMismatchError: If the two computations disagree.
    """
    closed = closed_form_transductive_error(H, G, sample, g, mode)
    instance = solve_projection(H, G, tuple(sample.distinct_points()), mode)
    bound = _group_capacity(instance, g, sample.domain_size) / sample.n

    average = None
    if sample.n <= MAX_PERMUTATION_N:
        average = permutation_transductive_error(MgOigPredictor(H, G, mode), sample, g)
        if average != closed:
            error_msg = (
                f"Closed-form transductive error {closed} differs from the permutation average {average} "
                f"on sample {list(sample.entries)}."
            )
            logger.error(error_msg)
            raise TransductiveMismatchError(error_msg)
    else:
        logger.debug(f"Skipping the permutation cross-check for n={sample.n} > {MAX_PERMUTATION_N}.")
    return TransductiveReport(closed_form=closed, permutation_average=average, capacity_bound=bound)


def sample_distance(H: ConceptClass, sample: LabeledSample, g: int) -> int:
    """||S - H||_g: the fewest per-entry disagreements of a hypothesis with S on entries inside g."""
    inside = [(x, y) for x, y in sample.entries if _in_group(g, x, sample.domain_size)]
    return min(sum(1 for x, y in inside if h.label(x) != y) for h in H)


def agnostic_transductive_error_exact(H: ConceptClass, G: GroupFamily, sample: LabeledSample, g: int) -> Fraction:
    """(1/n) sum_i 1{x_i in g} P[A(S^{-i})(x_i) != y_i] - (1/n) ||S - H||_g for the agnostic base predictor."""
    n = sample.n
    if n == 0:
        raise ValueError("The transductive error needs a nonempty sample.")
    predictor = AgnosticMgOigPredictor(H, G)
    mistakes = Fraction(0)
    for i, (x, y) in enumerate(sample.entries):
        if _in_group(g, x, sample.domain_size):
            mistakes += predictor.mistake_probability(sample.without(i), x, y)
    return (mistakes - sample_distance(H, sample, g)) / n


def agnostic_phi_over_n(H: ConceptClass, G: GroupFamily, sample: LabeledSample, g: int) -> Fraction:
    """Phi_g / n on the agnostic graph whose coordinates are the sample entries."""
    coord_points = tuple(sorted(x for x, _ in sample.entries))
    instance = solve_agnostic(H, G, coord_points)
    mask = restrict_bits(g, sample.domain_size, coord_points)
    if not mask:
        return Fraction(0)
    return phi(instance.graph, mask) / sample.n


def agnostic_log_bound_ok(value: Fraction, d: int, n: int) -> bool:
    """value <= 16 sqrt(d / n), compared without rounding the rational side."""
    return value <= 0 or value * value <= Fraction(256 * d, n)
