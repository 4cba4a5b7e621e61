"""Discrete learning tasks: a marginal over the finite domain plus a labeling rule."""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, List, Optional, Tuple

import numpy as np

from concepts.domain import Behavior, ConceptClass, GroupFamily, LabeledSample, point_bit
from concepts.realizability import enumerate_group_realizable, is_group_realizable_task, least_member
from constants import EXACT_ENUMERATION_BUDGET
from core.errors import BudgetExceededError, ConfigInvalidError
from schemas.config_schemas import TaskConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiscreteTask:
    """masses[x] = P(x); realizable tasks label by `target`, agnostic ones draw y = 1 with p_one[x]."""

    domain_size: int
    masses: Tuple[Fraction, ...]
    target: Optional[Behavior] = None
    p_one: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        if len(self.masses) != self.domain_size:
            raise ValueError(f"Expected {self.domain_size} point masses, got {len(self.masses)}.")
        if any(mass < 0 for mass in self.masses) or sum(self.masses, Fraction(0)) != 1:
            raise ValueError("Point masses must be non-negative and sum to exactly 1.")
        if (self.target is None) == (self.p_one is None):
            raise ValueError("A task has either a target concept or label probabilities, not both.")

    @property
    def is_realizable(self) -> bool:
        return self.target is not None

    @cached_property
    def support(self) -> Tuple[int, ...]:
        return tuple(x for x, mass in enumerate(self.masses) if mass > 0)

    def mass(self, mask: int) -> Fraction:
        """P(g) for a group mask over the domain."""
        return sum(
            (mass for x, mass in enumerate(self.masses) if mask & point_bit(x, self.domain_size)),
            Fraction(0),
        )

    def prob_label_one(self, x: int) -> Fraction:
        if self.target is not None:
            return Fraction(self.target.label(x))
        return self.p_one[x]

    def labeled_points(self) -> List[Tuple[Tuple[int, int], Fraction]]:
        """Every (point, label) pair with positive probability, with P(x, y)."""
        pairs = []
        for x in self.support:
            p = self.prob_label_one(x)
            for label, weight in ((0, 1 - p), (1, p)):
                if weight > 0:
                    pairs.append(((x, label), self.masses[x] * weight))
        return pairs

    def mistake_probability(self, prob_one: Fraction, x: int) -> Fraction:
        """P(f(x) != y | x) for a prediction that says 1 with probability prob_one."""
        p = self.prob_label_one(x)
        return p * (1 - prob_one) + (1 - p) * prob_one

    def hypothesis_error(self, h: Behavior, g: int) -> Fraction:
        """err_g(h) = P(h(x) != y and x in g)."""
        return sum(
            (
                self.masses[x] * self.mistake_probability(Fraction(h.label(x)), x)
                for x in self.support
                if g & point_bit(x, self.domain_size)
            ),
            Fraction(0),
        )

    def best_in_class_error(self, H: ConceptClass, g: int) -> Fraction:
        return min(self.hypothesis_error(h, g) for h in H)

    def draw_sample(self, n: int, rng: np.random.Generator) -> LabeledSample:
        """n i.i.d. draws; points first, then the labels of agnostic tasks."""
        weights = np.array([float(mass) for mass in self.masses])
        points = rng.choice(self.domain_size, size=n, p=weights / weights.sum())
        if self.target is not None:
            return LabeledSample.labeled_by((int(x) for x in points), self.target)
        coins = rng.random(n)
        entries = [(int(x), int(coin < float(self.p_one[int(x)]))) for x, coin in zip(points, coins)]
        return LabeledSample.of(entries, self.domain_size, require_consistent=False)

    def enumerate_samples(self, n: int) -> Iterator[Tuple[LabeledSample, Fraction]]:
        """Every n-entry sample with its exact probability.

        Raises:
            BudgetExceededError: If more than EXACT_ENUMERATION_BUDGET samples would be visited.
        """
        pairs = self.labeled_points()
        count = len(pairs) ** n
        if count > EXACT_ENUMERATION_BUDGET:
            error_msg = f"Exact enumeration of {len(pairs)}^{n} = {count} samples exceeds the budget."
            logger.error(error_msg)
            raise BudgetExceededError(error_msg)
        for combo in itertools.product(pairs, repeat=n):
            probability = Fraction(1)
            for _, weight in combo:
                probability *= weight
            sample = LabeledSample.of(
                (entry for entry, _ in combo), self.domain_size, require_consistent=self.is_realizable
            )
            yield sample, probability

    def enumerate_multisets(self, n: int) -> Iterator[Tuple[LabeledSample, Fraction]]:
        """Every n-entry sample up to order, with the total probability of its orderings.

        Exact for order-invariant predictors and far fewer samples than enumerate_samples.

        Raises:
            BudgetExceededError: If more than EXACT_ENUMERATION_BUDGET samples would be visited.
        """
        pairs = self.labeled_points()
        count = math.comb(len(pairs) + n - 1, n)
        if count > EXACT_ENUMERATION_BUDGET:
            error_msg = f"Exact enumeration of {count} sample multisets exceeds the budget."
            logger.error(error_msg)
            raise BudgetExceededError(error_msg)
        for combo in itertools.combinations_with_replacement(range(len(pairs)), n):
            probability = Fraction(math.factorial(n))
            for index in set(combo):
                k = combo.count(index)
                probability *= pairs[index][1] ** k / math.factorial(k)
            sample = LabeledSample.of(
                (pairs[index][0] for index in combo), self.domain_size, require_consistent=self.is_realizable
            )
            yield sample, probability


def build_task(config: TaskConfig, H: ConceptClass, G: GroupFamily) -> DiscreteTask:
    """Materializes a task descriptor; masses default to uniform, the target to the least group-realizable concept.

    Raises:
        ConfigInvalidError: If a realizable task's target is not group-realizable.
    """
    m = H.length
    masses = tuple(config.masses) if config.masses is not None else tuple(Fraction(1, m) for _ in range(m))
    if config.kind == "agnostic":
        return DiscreteTask(domain_size=m, masses=masses, p_one=tuple(config.p_one))

    if config.target is not None:
        target = Behavior.from_string(config.target)
    else:
        target = least_member(enumerate_group_realizable(H, G))
    task = DiscreteTask(domain_size=m, masses=masses, target=target)
    if not is_group_realizable_task(task, H, G):
        error_msg = f"Target {target} is not group-realizable for the configured class and groups."
        logger.error(error_msg)
        raise ConfigInvalidError(error_msg)
    return task
