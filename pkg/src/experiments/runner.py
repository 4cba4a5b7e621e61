"""Dispatches a validated experiment config to its suite and writes the run's reports."""

import logging
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple, Union

from constants import RESULTS_DIR
from experiments.bound_suites import run_covering, run_erm_vs_mgoig, run_lowerbound
from experiments.graph_suites import run_match_solve, run_oig_audit
from experiments.instance import ExperimentInstance, build_instance
from experiments.learning_suites import run_agnostic, run_pac, run_prediction, run_transductive
from experiments.report_generator import ExperimentReportGenerator
from schemas.config_schemas import ExperimentConfig
from schemas.report_schemas import ExperimentReport

logger = logging.getLogger(__name__)

Suite = Callable[[ExperimentConfig, Optional[ExperimentInstance], ExperimentReport, int], None]

SUITES: Dict[str, Suite] = {
    "oig-audit": run_oig_audit,
    "match-solve": run_match_solve,
    "transductive": run_transductive,
    "prediction": run_prediction,
    "pac": run_pac,
    "agnostic": run_agnostic,
    "covering": run_covering,
    "lowerbound": run_lowerbound,
    "erm-vs-mgoig": run_erm_vs_mgoig,
}


def run_experiment(config: ExperimentConfig, jobs: int = 1) -> ExperimentReport:
    """Runs the experiment named by the config and collects its rows.

    The lowerbound experiment builds its own instance; every other one runs on the
    configured (H, G, task).
    """
    instance = None if config.experiment == "lowerbound" else build_instance(config)
    report = ExperimentReport(config=config)
    logger.info(f"Running experiment '{config.experiment_id}' ({config.experiment}), seed {config.seed}, jobs {jobs}.")
    SUITES[config.experiment](config, instance, report, jobs)
    logger.info(
        f"Experiment '{config.experiment_id}' finished: {len(report.rows)} rows, "
        f"{len(report.bound_failures)} failed checks ({len(report.exact_failures)} exact)."
    )
    for row in report.exact_failures:
        logger.error(
            f"Exact check failed: {row.learner} g={row.g_id} n={row.n} {row.metric} {row.value} vs {row.bound}."
        )
    return report


def run_and_report(
    config: ExperimentConfig, jobs: int = 1, output_dir: Optional[Union[str, Path]] = None
) -> Tuple[ExperimentReport, Tuple[Path, Path, Path]]:
    """run_experiment followed by the CSV, manifest and Markdown outputs.

    The output directory is, in order: the argument, the config's output_dir, RESULTS_DIR.
    """
    report = run_experiment(config, jobs)
    directory = output_dir or config.output_dir or RESULTS_DIR
    paths = ExperimentReportGenerator(directory, jobs=jobs).generate_report(report)
    return report, paths
