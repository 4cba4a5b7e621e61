"""Multi-group prediction error, exact or Monte Carlo, with the PAC-style quantile audit.

Given a sample, err_g(A(S)) is computed exactly from the predictor's Bernoulli parameters,
so Monte Carlo only averages over samples and never over the predictor's own coin flips.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Dict, List, Literal, Optional, Tuple, Union

from concepts.domain import ConceptClass, GroupFamily, LabeledSample, point_bit
from concepts.vc import vc_restricted
from evaluation.bounds import agnostic_excess_bound, pac_realizable_bound, prediction_bound, prefix_average_bound
from evaluation.rng import stream_rng
from evaluation.task import DiscreteTask
from learners.aggregates import prefix_range
from learners.predictor import Predictor
from utils.compute_aggregate_metrics import compute_average, compute_halfwidth, compute_quantile
from utils.parallel import map_trials

logger = logging.getLogger(__name__)

Number = Union[Fraction, float]
EvaluationMode = Literal["exact", "mc"]


@dataclass(frozen=True)
class GroupError:
    """One metric for one group (g_id None for the supremum over groups)."""

    g_id: Optional[int]
    metric: str
    value: Number
    conditional: Optional[Number] = None
    bound: Optional[Number] = None
    bound_satisfied: Optional[bool] = None
    ci_halfwidth: Optional[float] = None


@dataclass(frozen=True)
class ErrorReport:
    learner: str
    n: int
    mode: EvaluationMode
    rows: Tuple[GroupError, ...]

    def row(self, g_id: Optional[int], metric: Optional[str] = None) -> GroupError:
        for row in self.rows:
            if row.g_id == g_id and (metric is None or row.metric == metric):
                return row
        raise KeyError(f"No row for group {g_id} and metric {metric}.")

    @property
    def all_satisfied(self) -> bool:
        return all(row.bound_satisfied is not False for row in self.rows)


def conditional_group_errors(
    predictor: Predictor, task: DiscreteTask, G: GroupFamily, sample: LabeledSample
) -> List[Fraction]:
    """err_g(A(S)) = P(A(S)(x) != y and x in g) for every group, given the sample."""
    mistakes: Dict[int, Fraction] = {
        x: task.masses[x] * task.mistake_probability(predictor.prob_one(sample, x), x) for x in task.support
    }
    return [
        sum((mistake for x, mistake in mistakes.items() if g & point_bit(x, task.domain_size)), Fraction(0))
        for g in G
    ]


def conditional_error(err_g: Number, group_mass: Fraction) -> Optional[Number]:
    """err(f|g) = err_g / P(g); undefined for null groups."""
    if group_mass == 0:
        return None
    if isinstance(err_g, Fraction):
        return err_g / group_mass
    return err_g / float(group_mass)


def _trial_group_errors(
    trial: int, predictor: Predictor, task: DiscreteTask, G: GroupFamily, n: int, seed: int
) -> List[Fraction]:
    sample = task.draw_sample(n, stream_rng(seed, n, trial))
    return conditional_group_errors(predictor, task, G, sample)


def sampled_group_errors(
    predictor: Predictor, task: DiscreteTask, G: GroupFamily, n: int, trials: int, seed: int, jobs: int = 1
) -> List[List[Fraction]]:
    """Per trial, err_g(A(S)) for every group; trial t draws its sample from stream (seed, n, t)."""
    worker = partial(_trial_group_errors, predictor=predictor, task=task, G=G, n=n, seed=seed)
    return map_trials(worker, trials, jobs)


def expected_group_errors(predictor: Predictor, task: DiscreteTask, G: GroupFamily, n: int) -> List[Fraction]:
    """E_S[err_g(A(S))] by exhaustive enumeration of the n-samples.

    Raises:
        BudgetExceededError: If the enumeration exceeds EXACT_ENUMERATION_BUDGET.
    """
    samples = task.enumerate_multisets(n) if predictor.order_invariant else task.enumerate_samples(n)
    totals = [Fraction(0)] * len(G)
    for sample, probability in samples:
        for gid, err in enumerate(conditional_group_errors(predictor, task, G, sample)):
            totals[gid] += probability * err
    return totals


def prediction_error(
    predictor: Predictor,
    task: DiscreteTask,
    G: GroupFamily,
    H: ConceptClass,
    n: int,
    mode: EvaluationMode = "exact",
    trials: int = 1000,
    seed: int = 0,
    jobs: int = 1,
) -> ErrorReport:
    """E_S[err_g(A(S))] per group against d_{H|g}/(n+1) (realizable tasks only carry the bound).

    Exact mode enumerates every sample; MC mode averages `trials` seeded samples and adds a
    99% normal-approximation half-width.
    """
    rows = []
    if mode == "exact":
        values: List[Number] = list(expected_group_errors(predictor, task, G, n))
        halfwidths: List[Optional[float]] = [None] * len(G)
    else:
        per_trial = sampled_group_errors(predictor, task, G, n, trials, seed, jobs)
        columns = [[float(errors[gid]) for errors in per_trial] for gid in range(len(G))]
        values = [compute_average(column) for column in columns]
        halfwidths = [compute_halfwidth(column) for column in columns]

    for gid, g in enumerate(G):
        bound = prediction_bound(vc_restricted(H, g), n) if task.is_realizable else None
        value = values[gid]
        if bound is None:
            satisfied = None
        elif mode == "exact":
            satisfied = value <= bound
        else:
            satisfied = value - halfwidths[gid] <= float(bound)
        rows.append(
            GroupError(
                g_id=gid,
                metric="prediction_error",
                value=value,
                conditional=conditional_error(value, task.mass(g)),
                bound=bound,
                bound_satisfied=satisfied,
                ci_halfwidth=halfwidths[gid],
            )
        )
    logger.debug(f"Prediction error of {predictor.name} at n={n} ({mode}): {[str(v) for v in values]}")
    return ErrorReport(learner=predictor.name, n=n, mode=mode, rows=tuple(rows))


def sup_group_error(
    predictor: Predictor,
    task: DiscreteTask,
    G: GroupFamily,
    n: int,
    trials: int = 1000,
    seed: int = 0,
    jobs: int = 1,
) -> ErrorReport:
    """Mean over seeded trials of max_g err_g(A(S)), with its 99% half-width."""
    per_trial = sampled_group_errors(predictor, task, G, n, trials, seed, jobs)
    maxima = [float(max(errors, default=Fraction(0))) for errors in per_trial]
    row = GroupError(
        g_id=None,
        metric="sup_group_error",
        value=compute_average(maxima),
        ci_halfwidth=compute_halfwidth(maxima),
    )
    return ErrorReport(learner=predictor.name, n=n, mode="mc", rows=(row,))


def pac_audit(
    predictor: Predictor,
    task: DiscreteTask,
    G: GroupFamily,
    H: ConceptClass,
    n: int,
    delta: Fraction,
    trials: int = 1000,
    seed: int = 0,
    jobs: int = 1,
) -> ErrorReport:
    """Empirical (1 - delta)-quantile of err_g (agnostic: err_g - min_h err_g) against its bound.

    Realizable tasks use 9.64 (d_{H|g}/(n+1) + log(2/delta)/n), agnostic ones
    16 sqrt((4 d_{H|g} + log(2/delta))/n). The comparison is one-sided.
    """
    per_trial = sampled_group_errors(predictor, task, G, n, trials, seed, jobs)
    rows = []
    for gid, g in enumerate(G):
        d = vc_restricted(H, g)
        if task.is_realizable:
            scores = [float(errors[gid]) for errors in per_trial]
            bound = pac_realizable_bound(d, n, delta)
            metric = "err_quantile"
        else:
            best = task.best_in_class_error(H, g)
            scores = [float(errors[gid] - best) for errors in per_trial]
            bound = agnostic_excess_bound(d, n, delta)
            metric = "excess_quantile"
        quantile = compute_quantile(scores, 1 - float(delta))
        rows.append(
            GroupError(
                g_id=gid,
                metric=metric,
                value=quantile,
                conditional=conditional_error(quantile, task.mass(g)),
                bound=bound,
                bound_satisfied=quantile <= bound,
            )
        )
    return ErrorReport(learner=predictor.name, n=n, mode="mc", rows=tuple(rows))


def _trial_prefix_average(
    trial: int, base: Predictor, task: DiscreteTask, G: GroupFamily, n: int, seed: int
) -> List[Fraction]:
    sample = task.draw_sample(n, stream_rng(seed, n, trial))
    lengths = prefix_range(n)
    totals = [Fraction(0)] * len(G)
    for t in lengths:
        for gid, err in enumerate(conditional_group_errors(base, task, G, sample.prefix(t))):
            totals[gid] += err
    return [total / len(lengths) for total in totals]


def prefix_average_audit(
    base: Predictor,
    task: DiscreteTask,
    G: GroupFamily,
    H: ConceptClass,
    n: int,
    delta: Fraction,
    trials: int = 1000,
    seed: int = 0,
    jobs: int = 1,
) -> ErrorReport:
    """(1 - delta)-quantile of the average err_g of the prefix predictors against 4.82 (...).

    The majority vote errs only where at least half of the prefix predictors err, which is
    where its guarantee doubles this one.
    """
    worker = partial(_trial_prefix_average, base=base, task=task, G=G, n=n, seed=seed)
    per_trial = map_trials(worker, trials, jobs)
    rows = []
    for gid, g in enumerate(G):
        scores = [float(averages[gid]) for averages in per_trial]
        quantile = compute_quantile(scores, 1 - float(delta))
        bound = prefix_average_bound(vc_restricted(H, g), n, delta)
        rows.append(
            GroupError(
                g_id=gid,
                metric="prefix_average_quantile",
                value=quantile,
                bound=bound,
                bound_satisfied=quantile <= bound,
            )
        )
    return ErrorReport(learner=f"prefixes({base.name})", n=n, mode="mc", rows=tuple(rows))
