"""Human-readable plan of an experiment: instance sizes, capacities and enumeration budgets."""

import logging
import math
from typing import List

from concepts.realizability import separated_points_number
from constants import EXACT_ENUMERATION_BUDGET, MAX_AGNOSTIC_VERTICES, MAX_EXHAUSTIVE_LOWER_BOUND_I, MAX_PERMUTATION_N
from core.errors import GraphTooLargeError
from evaluation.lower_bound import build_lower_bound_instance
from experiments.instance import ExperimentInstance, build_instance
from oig.density import max_subgraph_density
from schemas.config_schemas import ExperimentConfig
from utils.rationals import format_rational

logger = logging.getLogger(__name__)


def _plural(count: int, word: str, plural: str = "") -> str:
    return f"{count} {word}" if count == 1 else f"{count} {plural or word + 's'}"


def _describe_lower_bound(config: ExperimentConfig) -> List[str]:
    settings = config.lower_bound
    lower = build_lower_bound_instance(settings.points, config.epsilon)
    separated, witness = separated_points_number(lower.hypotheses, lower.groups, config.epsilon)
    search = (
        f"all {2 ** settings.points} labelings"
        if settings.points <= min(settings.exhaustive_max, MAX_EXHAUSTIVE_LOWER_BOUND_I)
        else "one adversarial labeling"
    )
    return [
        f"Lower-bound instance: I={settings.points} points, epsilon={format_rational(config.epsilon)}",
        f"n1={lower.n1:.3f}, n2={lower.n2:.3f}",
        f"Separated points with disjoint groups: {separated} {witness}",
        f"Search: {search}, {config.trials} trials per sample size",
        f"Tail grid: {len(settings.k_grid) * len(settings.delta_grid) * len(settings.t_grid)} cells "
        f"x {settings.tail_trials} trials",
    ]


def _density_line(instance: ExperimentInstance, gid: int) -> str:
    g = instance.G.masks[gid]
    try:
        density = format_rational(max_subgraph_density(instance.oig, g).density)
    except GraphTooLargeError:
        density = "too large to compute"
    return f"  group {gid}: d_g={density}, d_H|g={instance.group_dims[gid]}"


def _budget_lines(config: ExperimentConfig, instance: ExperimentInstance) -> List[str]:
    lines = []
    labeled = len(instance.task.labeled_points())
    for n in config.n_grid:
        if config.experiment == "agnostic":
            vertices = 2 ** (n + 1)
            line = f"n={n}: agnostic hypercube of {vertices} vertices, {2 ** n} sample labelings"
            if vertices > MAX_AGNOSTIC_VERTICES:
                line += f" (exceeds the cap of {MAX_AGNOSTIC_VERTICES})"
                logger.warning(f"Agnostic instance at n={n} has {vertices} vertices, above {MAX_AGNOSTIC_VERTICES}.")
        elif config.experiment == "prediction" and config.mode == "exact":
            ordered = labeled**n
            multisets = math.comb(labeled + n - 1, n)
            line = f"n={n}: {ordered} ordered samples, {multisets} multisets (budget {EXACT_ENUMERATION_BUDGET})"
            if multisets > EXACT_ENUMERATION_BUDGET:
                logger.warning(f"Exact enumeration at n={n} exceeds the budget of {EXACT_ENUMERATION_BUDGET}.")
        elif config.experiment == "transductive":
            check = f"{math.factorial(n)} permutations" if n <= MAX_PERMUTATION_N else "no permutation check"
            line = f"n={n}: {check}"
        else:
            line = f"n={n}: {config.trials} trials"
        lines.append(line)
    return lines


def describe(config: ExperimentConfig) -> str:
    """Plan of the run without executing it.

    Raises:
        ConfigInvalidError: If the instance cannot be built from the config.
    """
    lines = [f"Experiment {config.experiment_id} ({config.experiment}), seed {config.seed}, mode {config.mode}"]
    if config.experiment == "lowerbound":
        lines.extend(_describe_lower_bound(config))
        return "\n".join(lines)

    instance = build_instance(config)
    oig = instance.oig
    lines.append(
        f"Domain m={instance.m}, |H|={len(instance.H)}, {len(instance.realizable_concepts)} group-realizable concepts"
    )
    lines.append(
        f"{_plural(oig.n_vertices, 'vertex', 'vertices')}, {_plural(oig.n_edges, 'edge')}, "
        f"{_plural(len(oig.groups), 'group')}"
    )
    lines.extend(_density_line(instance, gid) for gid in range(len(instance.G)))
    lines.extend(_budget_lines(config, instance))
    return "\n".join(lines)
