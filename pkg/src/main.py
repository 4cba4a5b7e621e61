"""Command-line front end of the mgoig toolkit.

Commands: run, describe, match solve, predict, agnostic predict, agnostic audit, oig export.

Tables and JSON go to stdout; logs go to stderr and the log file.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import ValidationError

from agnostic.audit import audit_agnostic
from agnostic.graph import groups_on_coordinates
from agnostic.learner import AgnosticMgOigPredictor
from concepts.domain import LabeledSample
from concepts.realizability import enumerate_group_realizable, project_class
from core.errors import (
    BudgetExceededError,
    ConfigInvalidError,
    DomainTooLargeError,
    EpsilonOutOfRangeError,
    GraphTooLargeError,
    InconsistentSampleError,
    InstanceTooLargeError,
    KOutOfRangeError,
)
from core.logging_setup import resolve_log_level, setup_logging
from evaluation.rng import trial_rng
from experiments.describe import describe
from experiments.instance import ExperimentInstance, build_instance, supports_sample_size
from experiments.runner import run_and_report
from learners.factory import build_predictor
from matching.duality import duality_gap
from matching.linear_program import optimality_certificate
from matching.matching import is_prediction_sufficient
from matching.network import build_network
from matching.solver import solve_matching
from oig.one_inclusion_graph import build_oig
from schemas.config_schemas import ExperimentConfig, LearnerConfig
from utils.config_loader import ConfigLoader
from utils.file_handling import write_text_file
from utils.rationals import format_rational

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_INVALID = 2
EXIT_CRASHED = 3

# Conditions that reject the input before or while building an instance.
INPUT_ERRORS = (
    ConfigInvalidError,
    ValidationError,
    DomainTooLargeError,
    GraphTooLargeError,
    InstanceTooLargeError,
    BudgetExceededError,
    EpsilonOutOfRangeError,
    InconsistentSampleError,
    KOutOfRangeError,
)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _apply_overrides(config: ExperimentConfig, args: argparse.Namespace) -> ExperimentConfig:
    """Command-line flags win over the file; the merged config is validated again."""
    overrides = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "eval_mode", None) is not None:
        overrides["mode"] = args.eval_mode
    if getattr(args, "output_dir", None) is not None:
        overrides["output_dir"] = str(args.output_dir)
    if not overrides:
        return config
    logger.info(f"Command-line overrides for '{config.experiment_id}': {overrides}")
    return ExperimentConfig.model_validate({**config.model_dump(), **overrides})


def _load_config(args: argparse.Namespace) -> ExperimentConfig:
    return _apply_overrides(ConfigLoader().load_experiment(args.config), args)


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _check_point(instance: ExperimentInstance, point: int) -> None:
    if not 0 <= point < instance.m:
        error_msg = f"Test point {point} is outside the {instance.m}-point domain."
        logger.error(error_msg)
        raise ConfigInvalidError(error_msg)


def _load_labeled_sample(path: Path, m: int, require_consistent: bool) -> LabeledSample:
    sample = ConfigLoader().load_sample(path)
    try:
        return LabeledSample.of(sample.entries, m, require_consistent=require_consistent)
    except ValueError as e:
        error_msg = f"Sample file '{path}' does not fit the domain: {e}"
        logger.error(error_msg)
        raise ConfigInvalidError(error_msg) from e


def cmd_run(args: argparse.Namespace) -> int:
    target = Path(args.config)
    if target.is_dir():
        configs: List[ExperimentConfig] = list(ConfigLoader(target).load_experiments().values())
    else:
        configs = [ConfigLoader().load_experiment(target)]

    status = EXIT_OK
    for config in configs:
        config = _apply_overrides(config, args)
        report, paths = run_and_report(config, jobs=args.jobs, output_dir=args.output_dir)
        failed = len(report.exact_failures)
        print(
            f"{config.experiment_id}: {len(report.rows)} rows, {len(report.bound_failures)} failed checks "
            f"({failed} exact) -> {', '.join(str(path) for path in paths)}"
        )
        if failed:
            status = EXIT_CHECK_FAILED
    return status


def cmd_describe(args: argparse.Namespace) -> int:
    print(describe(_load_config(args)))
    return EXIT_OK


def cmd_match_solve(args: argparse.Namespace) -> int:
    config = _load_config(args)
    instance = build_instance(config)
    network = build_network(instance.oig, args.capacity_mode or config.learner.capacity_mode)
    matching, iterations = solve_matching(network, strict=False)
    certificate = optimality_certificate(matching)
    gap = duality_gap(matching, certificate)
    sufficient = is_prediction_sufficient(matching)
    logger.info(
        f"Solved '{config.experiment_id}': value {format_rational(matching.value)} of {network.n_edges}, "
        f"{iterations} iterations."
    )
    _print_json(
        {
            "experiment_id": config.experiment_id,
            "mode": network.mode.value,
            "value": format_rational(matching.value),
            "edges": network.n_edges,
            "integral": matching.is_integral(),
            "prediction_sufficient": sufficient,
            "iterations": iterations,
            "duality_gap": format_rational(gap),
            "dual": certificate.to_json_dict(),
            "network": network.to_json_dict(),
            "matching": matching.to_json_dict(),
        }
    )
    return EXIT_OK if sufficient else EXIT_CHECK_FAILED


def _predict_with(predictor, instance: ExperimentInstance, sample: LabeledSample, point: int, seed: int) -> int:
    """Prints P(label 1) and one label drawn from trial stream 0 of the resolved seed."""
    _check_point(instance, point)
    if not supports_sample_size(predictor, sample.n):
        error_msg = f"{predictor.name} is not defined on samples of size {sample.n}."
        logger.error(error_msg)
        raise ConfigInvalidError(error_msg)
    prob_one = predictor.prob_one(sample, point)
    label = predictor.predict(sample, point, trial_rng(seed, 0))
    _print_json(
        {
            "learner": predictor.name,
            "point": point,
            "sample_size": sample.n,
            "prob_one": format_rational(prob_one),
            "label": label,
            "seed": seed,
        }
    )
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    config = _load_config(args)
    instance = build_instance(config)
    learner = LearnerConfig(kind=args.learner, capacity_mode=args.capacity_mode or config.learner.capacity_mode)
    predictor = build_predictor(learner, instance.H, instance.G, config.delta, instance.d_sup)
    sample = _load_labeled_sample(args.sample, instance.m, require_consistent=learner.kind != "agnostic")
    return _predict_with(predictor, instance, sample, args.point, config.seed)


def cmd_agnostic_predict(args: argparse.Namespace) -> int:
    config = _load_config(args)
    instance = build_instance(config)
    sample = _load_labeled_sample(args.sample, instance.m, require_consistent=False)
    predictor = AgnosticMgOigPredictor(instance.H, instance.G)
    return _predict_with(predictor, instance, sample, args.point, config.seed)


def _parse_points(raw: str) -> List[int]:
    try:
        return [int(token) for token in raw.split(",") if token.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Expected comma-separated point indices, got '{raw}'.") from e


def cmd_agnostic_audit(args: argparse.Namespace) -> int:
    config = _load_config(args)
    instance = build_instance(config)
    if args.points is not None:
        points = args.points
    elif args.sample is not None:
        points = [point for point, _ in _load_labeled_sample(args.sample, instance.m, False).entries]
    else:
        points = list(range(instance.m))
    for point in points:
        _check_point(instance, point)
    _print_json(audit_agnostic(instance.H, instance.G, points))
    return EXIT_OK


def cmd_oig_export(args: argparse.Namespace) -> int:
    config = _load_config(args)
    instance = build_instance(config)
    if args.points:
        for point in args.points:
            _check_point(instance, point)
        groups = groups_on_coordinates(instance.G, args.points)
        oig = build_oig(enumerate_group_realizable(project_class(instance.H, args.points), groups), groups)
    else:
        oig = instance.oig
    text = oig.to_json() + "\n" if args.format == "json" else oig.to_dot()
    if args.out is not None:
        write_text_file(args.out, text)
        logger.info(f"OIG with {oig.n_vertices} vertices and {oig.n_edges} edges written to {args.out}.")
    else:
        print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--log-level", choices=LOG_LEVELS, default=None, help="Console verbosity (default: MGOIG_LOG_LEVEL or INFO)."
    )
    common.add_argument("--seed", type=int, default=None, help="Overrides the config's master seed.")
    common.add_argument("--jobs", type=int, default=1, help="Worker processes for trial-level parallelism.")
    common.add_argument("--output-dir", type=Path, default=None, help="Overrides the output directory.")

    parser = argparse.ArgumentParser(prog="mgoig", description="Multi-group one-inclusion graph learner toolkit.")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", parents=[common], help="Run one experiment file or every file in a directory.")
    run.add_argument("config", type=Path)
    run.add_argument("--mode", dest="eval_mode", choices=("exact", "mc"), default=None)
    run.set_defaults(handler=cmd_run)

    plan = commands.add_parser("describe", parents=[common], help="Print instance sizes and budgets without running.")
    plan.add_argument("config", type=Path)
    plan.add_argument("--mode", dest="eval_mode", choices=("exact", "mc"), default=None)
    plan.set_defaults(handler=cmd_describe)

    match = commands.add_parser("match", help="Matching solver commands.")
    match_commands = match.add_subparsers(dest="match_command", required=True)
    solve = match_commands.add_parser("solve", parents=[common], help="Solve the matching of the config's OIG.")
    solve.add_argument("config", type=Path)
    solve.add_argument("--mode", dest="capacity_mode", choices=("exact", "ceil"), default=None)
    solve.set_defaults(handler=cmd_match_solve)

    predict = commands.add_parser("predict", parents=[common], help="Predict one label from a sample file.")
    predict.add_argument("--learner", choices=("mgoig", "majority", "agnostic", "erm"), default="mgoig")
    predict.add_argument("--config", type=Path, required=True)
    predict.add_argument("--sample", type=Path, required=True)
    predict.add_argument("--point", type=int, required=True)
    predict.add_argument("--mode", dest="capacity_mode", choices=("exact", "ceil"), default=None)
    predict.set_defaults(handler=cmd_predict)

    agnostic = commands.add_parser("agnostic", help="Agnostic one-inclusion graph commands.")
    agnostic_commands = agnostic.add_subparsers(dest="agnostic_command", required=True)
    agnostic_predict = agnostic_commands.add_parser("predict", parents=[common], help="Agnostic base prediction.")
    agnostic_predict.add_argument("--config", type=Path, required=True)
    agnostic_predict.add_argument("--sample", type=Path, required=True)
    agnostic_predict.add_argument("--point", type=int, required=True)
    agnostic_predict.set_defaults(handler=cmd_agnostic_predict)
    audit = agnostic_commands.add_parser("audit", parents=[common], help="Dump credits, Phi_g and capacities.")
    audit.add_argument("--config", type=Path, required=True)
    coordinates = audit.add_mutually_exclusive_group()
    coordinates.add_argument("--sample", type=Path, default=None, help="Use the sample's points as coordinates.")
    coordinates.add_argument("--points", type=_parse_points, default=None, help="Comma-separated coordinates.")
    audit.set_defaults(handler=cmd_agnostic_audit)

    oig = commands.add_parser("oig", help="One-inclusion graph commands.")
    oig_commands = oig.add_subparsers(dest="oig_command", required=True)
    export = oig_commands.add_parser("export", parents=[common], help="Export the group-realizable OIG.")
    export.add_argument("--config", type=Path, required=True)
    export.add_argument("--format", choices=("json", "dot"), default="json")
    export.add_argument("--points", type=_parse_points, default=None, help="Project onto these points first.")
    export.add_argument("--out", type=Path, default=None, help="Write to a file instead of stdout.")
    export.set_defaults(handler=cmd_oig_export)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(console_log_level=resolve_log_level(args.log_level))

    try:
        return args.handler(args)
    except INPUT_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_CONFIG_INVALID
    except Exception as e:
        logger.critical(f"mgoig {args.command} crashed: {e}")
        return EXIT_CRASHED


if __name__ == "__main__":
    sys.exit(run())
