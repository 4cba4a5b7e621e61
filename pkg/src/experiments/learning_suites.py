"""The transductive, prediction, pac and agnostic experiments."""

import itertools
import logging
import math
from fractions import Fraction
from typing import List, Optional

from agnostic.audit import coordinate_group
from agnostic.graph import BRUTE_FORCE_PHI_MAX_COORDS, brute_force_phi, build_agnostic_graph, phi
from agnostic.learner import solve_agnostic
from concepts.domain import LabeledSample
from core.errors import ConfigInvalidError
from evaluation.bounds import agnostic_transductive_bound, pac_realizable_bound, transductive_bound
from evaluation.prediction import ErrorReport, pac_audit, prediction_error, prefix_average_audit
from evaluation.transductive import (
    agnostic_log_bound_ok,
    agnostic_phi_over_n,
    agnostic_transductive_error_exact,
    transductive_error_exact,
)
from experiments.instance import (
    ExperimentInstance,
    build_predictors,
    sample_points,
    supports_sample_size,
    target_sample,
)
from learners.aggregates import PrefixMajorityPredictor
from learners.mgoig import MgOigPredictor, solve_projection
from learners.predictor import Predictor
from matching.network import CapacityMode
from schemas.config_schemas import ExperimentConfig
from schemas.report_schemas import ExperimentReport

logger = logging.getLogger(__name__)

# Every group-realizable target is swept when there are at most this many.
MAX_EXHAUSTIVE_TARGETS = 64


def add_error_report(report: ExperimentReport, result: ErrorReport, exact_check: bool) -> None:
    for row in result.rows:
        report.add(
            result.learner,
            row.metric,
            row.value,
            g_id=row.g_id,
            n=result.n,
            bound=row.bound,
            bound_satisfied=row.bound_satisfied,
            ci_halfwidth=row.ci_halfwidth,
            exact_check=exact_check and row.bound_satisfied is not None,
        )
        if row.conditional is not None:
            report.add(result.learner, f"conditional_{row.metric}", row.conditional, g_id=row.g_id, n=result.n)


def add_shortfall(report: ExperimentReport, learner: str, shortfall: Fraction, n: int) -> None:
    """Edge mass the optimal matching leaves unassigned; any positive amount fails the run."""
    report.add(
        learner,
        "matching_shortfall",
        shortfall,
        n=n,
        bound=0,
        bound_satisfied=shortfall == 0,
        exact_check=True,
    )


def _projection_mode(predictor: Predictor) -> Optional[CapacityMode]:
    """Capacity mode of the multi-group OIG a predictor reads, None when it reads none."""
    if isinstance(predictor, PrefixMajorityPredictor):
        predictor = predictor.base
    if isinstance(predictor, MgOigPredictor):
        return predictor.mode
    return None


def projection_shortfalls(instance: ExperimentInstance, mode: CapacityMode, max_size: int) -> int:
    """Projections U of at most `max_size` support points whose optimal matching stays below |E|.

    Every such U is the union of some sample's distinct points and a test point.
    """
    support = instance.task.support
    short = 0
    for size in range(1, min(max_size, len(support)) + 1):
        for points in itertools.combinations(support, size):
            solved = solve_projection(instance.H, instance.G, points, mode)
            if solved.shortfall:
                short += 1
                logger.warning(f"Projection on {list(points)} leaves {solved.shortfall} of edge mass unassigned.")
    return short


def _usable(report: ExperimentReport, predictor: Predictor, n: int) -> bool:
    if supports_sample_size(predictor, n):
        return True
    report.notes.append(f"{predictor.name} is not defined on samples of size {n}; skipped.")
    return False


def run_transductive(
    config: ExperimentConfig, instance: ExperimentInstance, report: ExperimentReport, jobs: int
) -> None:
    mode = CapacityMode(config.learner.capacity_mode)
    learner = f"mgoig-{mode.value}"
    targets = instance.realizable_concepts.members
    exhaustive = len(targets) <= MAX_EXHAUSTIVE_TARGETS
    if not exhaustive:
        report.notes.append(f"{len(targets)} group-realizable targets exceed {MAX_EXHAUSTIVE_TARGETS}; no sweep.")

    for n in config.n_grid:
        if n == 0:
            report.notes.append("The transductive error is undefined for n=0; skipped.")
            continue
        points = sample_points(config, n)
        sample = target_sample(instance, points)
        projection = solve_projection(instance.H, instance.G, tuple(sample.distinct_points()), mode)
        add_shortfall(report, learner, projection.shortfall, n)
        for gid, g in enumerate(instance.G):
            d = instance.group_dims[gid]
            result = transductive_error_exact(instance.H, instance.G, sample, g, mode)
            report.add(
                learner,
                "transductive_error",
                result.closed_form,
                g_id=gid,
                n=n,
                bound=result.capacity_bound,
                bound_satisfied=result.closed_form <= result.capacity_bound,
                exact_check=True,
            )
            report.add(
                learner,
                "capacity_over_n",
                result.capacity_bound,
                g_id=gid,
                n=n,
                bound=transductive_bound(d, n),
                bound_satisfied=result.capacity_bound <= transductive_bound(d, n),
                exact_check=True,
            )
            if result.permutation_average is not None:
                report.add(
                    learner,
                    "permutation_average",
                    result.permutation_average,
                    g_id=gid,
                    n=n,
                    bound=result.closed_form,
                    bound_satisfied=result.permutation_average == result.closed_form,
                    exact_check=True,
                )
            if exhaustive:
                worst = max(
                    transductive_error_exact(
                        instance.H, instance.G, LabeledSample.labeled_by(points, target), g, mode
                    ).closed_form
                    for target in targets
                )
                report.add(
                    learner,
                    "transductive_error_max",
                    worst,
                    g_id=gid,
                    n=n,
                    bound=transductive_bound(d, n),
                    bound_satisfied=worst <= transductive_bound(d, n),
                    exact_check=True,
                )
        logger.info(f"Transductive errors computed for n={n} on {len(instance.G)} groups.")


def run_prediction(
    config: ExperimentConfig, instance: ExperimentInstance, report: ExperimentReport, jobs: int
) -> None:
    for predictor in build_predictors(config, instance):
        for n in config.n_grid:
            if not _usable(report, predictor, n):
                continue
            result = prediction_error(
                predictor, instance.task, instance.G, instance.H, n, config.mode, config.trials, config.seed, jobs
            )
            add_error_report(report, result, exact_check=config.mode == "exact")
            mode = _projection_mode(predictor)
            if mode is not None:
                short = projection_shortfalls(instance, mode, n + 1)
                report.add(
                    predictor.name,
                    "projection_shortfalls",
                    short,
                    n=n,
                    bound=0,
                    bound_satisfied=short == 0,
                    exact_check=True,
                )
            logger.info(f"Prediction error of {predictor.name} at n={n} ({config.mode}) computed.")


def _rate_ratio(quantile: float, d: int, n: int, delta) -> float:
    """quantile / ((d + log(1/delta)) / n): the unnamed constant the high-probability rate would need."""
    rate = (d + math.log(1 / float(delta))) / n
    return quantile / rate


def run_pac(config: ExperimentConfig, instance: ExperimentInstance, report: ExperimentReport, jobs: int) -> None:
    task = instance.task
    for predictor in build_predictors(config, instance):
        for n in config.n_grid:
            if n == 0 or not _usable(report, predictor, n):
                continue
            result = pac_audit(
                predictor, task, instance.G, instance.H, n, config.delta, config.trials, config.seed, jobs
            )
            add_error_report(report, result, exact_check=False)

            for gid, row in enumerate(result.rows):
                if task.is_realizable:
                    # The uniform reading bounds every group with sup_g d_{H|g}.
                    uniform = pac_realizable_bound(instance.d_sup, n, config.delta)
                    report.add(
                        result.learner,
                        "err_quantile_uniform_d",
                        row.value,
                        g_id=gid,
                        n=n,
                        bound=uniform,
                        bound_satisfied=row.value <= uniform,
                    )
                if isinstance(predictor, PrefixMajorityPredictor):
                    ratio = _rate_ratio(row.value, instance.group_dims[gid], n, config.delta)
                    report.add(result.learner, "rate_ratio", ratio, g_id=gid, n=n)

            if isinstance(predictor, PrefixMajorityPredictor) and task.is_realizable:
                average = prefix_average_audit(
                    predictor.base, task, instance.G, instance.H, n, config.delta, config.trials, config.seed, jobs
                )
                add_error_report(report, average, exact_check=False)
            logger.info(f"PAC audit of {predictor.name} at n={n} done.")


def _labelings(points: List[int], m: int):
    for labels in itertools.product((0, 1), repeat=len(points)):
        yield LabeledSample.of(zip(points, labels), m, require_consistent=False)


def run_agnostic(config: ExperimentConfig, instance: ExperimentInstance, report: ExperimentReport, jobs: int) -> None:
    """Exact agnostic chain over every labeling of the configured (distinct) sample points."""
    H, G, m = instance.H, instance.G, instance.m
    learner = "agnostic-mgoig"
    for n in config.n_grid:
        if n == 0:
            report.notes.append("The agnostic transductive error is undefined for n=0; skipped.")
            continue
        points = sample_points(config, n)
        if len(set(points)) != n:
            error_msg = f"Agnostic experiments need {n} distinct sample points, got {points}."
            logger.error(error_msg)
            raise ConfigInvalidError(error_msg)
        samples = list(_labelings(points, m))
        add_shortfall(report, learner, solve_agnostic(H, G, tuple(sorted(points))).shortfall, n)
        graph = build_agnostic_graph(H, G, sorted(points)) if n <= BRUTE_FORCE_PHI_MAX_COORDS else None

        for gid, g in enumerate(G):
            d = instance.group_dims[gid]
            phi_over_n = agnostic_phi_over_n(H, G, samples[0], g)
            worst = max(agnostic_transductive_error_exact(H, G, sample, g) for sample in samples)
            report.add(
                learner,
                "agnostic_transductive_error",
                worst,
                g_id=gid,
                n=n,
                bound=phi_over_n,
                bound_satisfied=worst <= phi_over_n,
                exact_check=True,
            )
            report.add(
                learner,
                "phi_over_n",
                phi_over_n,
                g_id=gid,
                n=n,
                bound=agnostic_transductive_bound(d, n),
                bound_satisfied=agnostic_log_bound_ok(phi_over_n, d, n),
                exact_check=True,
            )
            mask = coordinate_group(G, gid, graph.coord_points) if graph is not None else 0
            if mask:
                oracle = brute_force_phi(graph, mask)
                direct = phi(graph, mask)
                report.add(
                    learner,
                    "phi_oracle",
                    oracle,
                    g_id=gid,
                    n=n,
                    bound=direct,
                    bound_satisfied=oracle == direct,
                    exact_check=True,
                )
        logger.info(f"Agnostic chain checked for n={n} over {len(samples)} labelings.")
