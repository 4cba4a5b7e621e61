"""The covering, lowerbound and erm-vs-mgoig experiments."""

import logging
from fractions import Fraction
from typing import Dict, Optional, Tuple

from concepts.realizability import separated_points_number
from concepts.vc import vc_restricted_sup
from constants import MC_Z_99
from evaluation.bounds import erm_rate, mgoig_rate
from evaluation.covering import greedy_l1_cover, mg_covering_number
from evaluation.lower_bound import build_lower_bound_instance, lower_bound_failure_prob, tail_grid
from evaluation.prediction import sup_group_error
from experiments.instance import ExperimentInstance, build_predictors, learner_configs, supports_sample_size
from learners.factory import build_predictor
from schemas.config_schemas import ExperimentConfig
from schemas.report_schemas import ExperimentReport
from utils.rationals import format_rational

logger = logging.getLogger(__name__)


def run_covering(config: ExperimentConfig, instance: ExperimentInstance, report: ExperimentReport, jobs: int) -> None:
    G = instance.G
    cover = greedy_l1_cover(G, instance.task, config.epsilon)
    covering = mg_covering_number(G, instance.task, config.epsilon)

    report.add("covering", "group_count", len(G))
    report.add(
        "covering",
        "l1_cover_size",
        len(cover.cover),
        bound=len(G),
        bound_satisfied=len(cover.cover) <= len(G),
        exact_check=True,
    )
    # Soft check: a maximal packing larger than the packing bound is only logged.
    report.add(
        "covering",
        "l1_cover_packing_check",
        len(cover.cover),
        bound=cover.packing_bound,
        bound_satisfied=cover.within_bound,
    )
    report.add(
        "covering",
        "mg_covering_number",
        covering.value,
        bound=len(cover.cover),
        bound_satisfied=covering.value <= len(cover.cover),
        exact_check=covering.exact,
    )
    report.notes.append(f"Covering witness: {covering.witness.to_strings()} (exact={covering.exact}).")
    logger.info(f"Covering number {covering.value} <= L1 cover {len(cover.cover)} <= |G| = {len(G)}.")


def run_lowerbound(
    config: ExperimentConfig, instance: Optional[ExperimentInstance], report: ExperimentReport, jobs: int
) -> None:
    settings = config.lower_bound
    lower = build_lower_bound_instance(settings.points, config.epsilon)
    d = vc_restricted_sup(lower.hypotheses, lower.groups)
    separated, _ = separated_points_number(lower.hypotheses, lower.groups, config.epsilon)
    regime = max(lower.n1, lower.n2)

    report.add("lower-bound", "n1", lower.n1)
    report.add("lower-bound", "n2", lower.n2)
    report.add("lower-bound", "separated_points", separated)

    predictors = [
        build_predictor(learner, lower.hypotheses, lower.groups, config.delta, d) for learner in learner_configs(config)
    ]
    for predictor in predictors:
        for n in config.n_grid:
            if not supports_sample_size(predictor, n):
                report.notes.append(f"{predictor.name} is not defined on samples of size {n}; skipped.")
                continue
            result = lower_bound_failure_prob(lower, predictor, n, config.trials, config.seed, settings.exhaustive_max)
            # Below max(n1, n2) the failure probability must reach 1/2 up to three standard errors.
            in_regime = n < regime
            report.add(
                predictor.name,
                "failure_prob",
                result.failure_prob,
                n=n,
                bound=Fraction(1, 2) if in_regime else None,
                bound_satisfied=result.failure_prob >= 0.5 - 3 * result.standard_error if in_regime else None,
                ci_halfwidth=MC_Z_99 * result.standard_error,
            )
            report.notes.append(
                f"{predictor.name} at n={n}: worst labeling {result.worst_b} of {result.searched} searched "
                f"({'exhaustive' if result.exhaustive else 'adversarial heuristic'})."
            )
            logger.info(f"Lower bound for {predictor.name} at n={n}: failure probability {result.failure_prob:.4f}.")

    for estimate in tail_grid(settings.k_grid, settings.delta_grid, settings.t_grid, settings.tail_trials, config.seed):
        report.add(
            "geometric-tail",
            f"tail_probability[k={estimate.k},delta={format_rational(estimate.delta)},t={estimate.t}]",
            estimate.estimate,
            bound=estimate.bound,
            bound_satisfied=estimate.satisfied,
            ci_halfwidth=MC_Z_99 * estimate.standard_error,
        )


def run_erm_vs_mgoig(
    config: ExperimentConfig, instance: ExperimentInstance, report: ExperimentReport, jobs: int
) -> None:
    """Mean sup-group error per learner on common samples, the two rates and the direction check against ERM."""
    predictors = build_predictors(config, instance)
    means: Dict[Tuple[str, int], float] = {}
    for predictor in predictors:
        for n in config.n_grid:
            if not supports_sample_size(predictor, n):
                report.notes.append(f"{predictor.name} is not defined on samples of size {n}; skipped.")
                continue
            row = sup_group_error(
                predictor, instance.task, instance.G, n, config.trials, config.seed, jobs
            ).row(None)
            means[(predictor.name, n)] = row.value
            report.add(predictor.name, row.metric, row.value, n=n, ci_halfwidth=row.ci_halfwidth)
            logger.info(f"{predictor.name} at n={n}: mean sup-group error {row.value:.4f}.")

    for n in config.n_grid:
        if n > 0:
            report.add("rate", "erm_rate", erm_rate(instance.d_sup, n), n=n)
            report.add("rate", "mgoig_rate", mgoig_rate(instance.d_sup, n), n=n)

    baselines = [p for p in predictors if p.provenance == "erm-baseline"]
    if not baselines:
        report.notes.append("No ERM learner configured; direction check skipped.")
        return
    erm = baselines[0]
    for predictor in predictors:
        if predictor is erm:
            continue
        for n in config.n_grid:
            if (predictor.name, n) not in means or (erm.name, n) not in means:
                continue
            difference = means[(predictor.name, n)] - means[(erm.name, n)]
            report.add(
                f"{predictor.name}-vs-{erm.name}",
                "sup_error_difference",
                difference,
                n=n,
                bound=0,
                bound_satisfied=difference <= 0,
            )
