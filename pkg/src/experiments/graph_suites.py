"""The oig-audit and match-solve experiments: densities, Haussler's bound and the matching solver.

Besides the configured instance, both experiments can sweep random small classes drawn
from stream (seed, RANDOM_INSTANCE_STREAM, i).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List

from concepts.domain import ConceptClass, GroupFamily
from concepts.vc import vc_dimension
from constants import MAX_DENSITY_VERTICES, ORACLE_MAX_DENOMINATOR, ORACLE_MAX_EDGES
from evaluation.rng import stream_rng
from experiments.instance import ExperimentInstance
from matching.duality import duality_gap, verify_optimality
from matching.linear_program import optimality_certificate
from matching.matching import is_prediction_sufficient
from matching.network import CapacityMode, MgNetwork, build_network
from matching.oracle import brute_force_optimum, group_max_flow, saturating_flow_check
from matching.solver import solve_matching
from oig.density import max_subgraph_density, verify_haussler
from oig.one_inclusion_graph import Oig, build_oig, g_relevant_edges
from schemas.config_schemas import ExperimentConfig
from schemas.report_schemas import ExperimentReport

logger = logging.getLogger(__name__)

RANDOM_INSTANCE_STREAM = 7
MAX_RANDOM_GROUPS = 3


@dataclass(frozen=True)
class RandomInstance:
    concepts: ConceptClass
    groups: GroupFamily


def random_instances(count: int, max_points: int, seed: int) -> Iterator[RandomInstance]:
    """Random classes of at most MAX_DENSITY_VERTICES behaviors with 1..3 random nonempty groups."""
    for i in range(count):
        rng = stream_rng(seed, RANDOM_INSTANCE_STREAM, i)
        m = int(rng.integers(1, max_points + 1))
        size = int(rng.integers(1, min(1 << m, MAX_DENSITY_VERTICES) + 1))
        bits = rng.choice(1 << m, size=size, replace=False)
        n_groups = int(rng.integers(1, MAX_RANDOM_GROUPS + 1))
        masks = rng.integers(1, 1 << m, size=n_groups)
        yield RandomInstance(
            concepts=ConceptClass.from_bits((int(b) for b in bits), m),
            groups=GroupFamily.of((int(mask) for mask in masks), m),
        )


def _full_mask(oig: Oig) -> int:
    return (1 << oig.n_points) - 1


def run_oig_audit(
    config: ExperimentConfig, instance: ExperimentInstance, report: ExperimentReport, jobs: int
) -> None:
    oig = instance.oig
    report.add("oig", "vertices", oig.n_vertices)
    report.add("oig", "edges", oig.n_edges)

    for gid, g in enumerate(instance.G):
        density = max_subgraph_density(oig, g)
        d = instance.group_dims[gid]
        report.add("oig", "relevant_edges", len(g_relevant_edges(oig, g)), g_id=gid)
        report.add(
            "oig",
            "max_density",
            density.density,
            g_id=gid,
            bound=d,
            bound_satisfied=density.density <= d,
            exact_check=True,
        )

    d_class = vc_dimension(instance.realizable_concepts)
    full_density = max_subgraph_density(oig, _full_mask(oig)).density
    report.add(
        "oig",
        "haussler_density",
        full_density,
        bound=d_class,
        bound_satisfied=full_density <= d_class,
        exact_check=True,
    )

    if config.audit.random_classes:
        violations = 0
        for random_instance in random_instances(config.audit.random_classes, config.audit.max_points, config.seed):
            concepts = random_instance.concepts
            if not verify_haussler(build_oig(concepts), vc_dimension(concepts)):
                violations += 1
                logger.warning(f"Haussler density bound violated on {concepts.to_strings()}.")
        report.add(
            "oig",
            "random_haussler_violations",
            violations,
            bound=0,
            bound_satisfied=violations == 0,
            exact_check=True,
        )
        report.notes.append(f"Density bound checked on {config.audit.random_classes} random classes.")


def _oracle_sized(network: MgNetwork) -> bool:
    return network.n_edges <= ORACLE_MAX_EDGES and network.scale() <= ORACLE_MAX_DENOMINATOR


@dataclass(frozen=True)
class SolverAudit:
    """Checks that must hold on every network, plus the two properties that depend on the instance."""

    failures: List[str]
    shortfall: Fraction
    integral: bool


def audit_solver(network: MgNetwork) -> SolverAudit:
    """Solves the network and collects the names of the unconditional checks it fails.

    Feasibility, optimality against the LP dual, the iteration bound and the grid oracle
    must always hold. A value below |E| and a fractional optimum under integral capacities
    are properties of the instance and are returned separately.
    """
    matching, iterations = solve_matching(network, strict=False)
    certificate = optimality_certificate(matching)
    failures = []
    if not matching.is_feasible():
        failures.append("feasible")
    if not verify_optimality(matching, certificate):
        failures.append("duality")
    if iterations > network.scale() * network.n_edges:
        failures.append("iterations")
    if _oracle_sized(network) and brute_force_optimum(network) > matching.value:
        failures.append("oracle")
    return SolverAudit(
        failures=failures,
        shortfall=network.n_edges - matching.value,
        integral=matching.is_integral() or not network.is_integral(),
    )


def run_match_solve(
    config: ExperimentConfig, instance: ExperimentInstance, report: ExperimentReport, jobs: int
) -> None:
    oig = instance.oig
    for mode in (CapacityMode.EXACT, CapacityMode.CEIL):
        learner = f"solver-{mode.value}"
        network = build_network(oig, mode)
        matching, iterations = solve_matching(network, strict=False)
        certificate = optimality_certificate(matching)
        gap = duality_gap(matching, certificate)
        shortfall = network.n_edges - matching.value

        report.add(
            learner,
            "matching_value",
            matching.value,
            bound=network.n_edges,
            bound_satisfied=matching.value == network.n_edges,
            exact_check=True,
        )
        report.add(
            learner,
            "matching_shortfall",
            shortfall,
            bound=0,
            bound_satisfied=shortfall == 0,
            exact_check=True,
        )
        report.add(
            learner,
            "integral",
            int(matching.is_integral()),
            bound=1 if network.is_integral() else None,
            bound_satisfied=matching.is_integral() if network.is_integral() else None,
            exact_check=network.is_integral(),
        )
        report.add(
            learner,
            "prediction_sufficient",
            int(is_prediction_sufficient(matching)),
            bound=1,
            bound_satisfied=is_prediction_sufficient(matching),
            exact_check=True,
        )
        report.add(
            learner,
            "dual_value",
            certificate.value,
            bound=network.n_edges,
            bound_satisfied=certificate.value <= network.n_edges,
        )
        report.add(
            learner,
            "duality_gap",
            gap,
            bound=0,
            bound_satisfied=gap == 0 and verify_optimality(matching, certificate),
            exact_check=True,
        )
        report.add(
            learner,
            "iterations",
            iterations,
            bound=network.scale() * network.n_edges,
            bound_satisfied=iterations <= network.scale() * network.n_edges,
            exact_check=True,
        )
        for gid in range(network.n_groups):
            report.add(learner, "capacity", network.capacity(0, gid) if oig.n_vertices else 0, g_id=gid)
            report.add(
                learner,
                "group_max_flow",
                group_max_flow(network, gid),
                g_id=gid,
                bound=len(oig.group_index[gid]),
                bound_satisfied=saturating_flow_check(network, gid),
                exact_check=True,
            )
        if _oracle_sized(network):
            optimum = brute_force_optimum(network)
            report.add(
                learner,
                "oracle_optimum",
                optimum,
                bound=matching.value,
                bound_satisfied=optimum <= matching.value,
                exact_check=True,
            )
        log = logger.warning if shortfall else logger.info
        log(
            f"{learner}: value {matching.value} of |E|={network.n_edges}, integral={matching.is_integral()}, "
            f"iterations={iterations}."
        )

    if config.audit.random_classes:
        failing = 0
        short = 0
        fractional = 0
        checked = 0
        for random_instance in random_instances(config.audit.random_classes, config.audit.max_points, config.seed):
            random_oig = build_oig(random_instance.concepts, random_instance.groups)
            for mode in (CapacityMode.EXACT, CapacityMode.CEIL):
                checked += 1
                audit = audit_solver(build_network(random_oig, mode))
                short += audit.shortfall > 0
                fractional += not audit.integral
                if audit.failures:
                    failing += 1
                    logger.warning(
                        f"Random instance {random_instance.concepts.to_strings()} ({mode.value}) "
                        f"failed {audit.failures}."
                    )
        report.add(
            "solver",
            "random_solver_failures",
            failing,
            bound=0,
            bound_satisfied=failing == 0,
            exact_check=True,
        )
        report.add("solver", "random_shortfall_instances", short)
        report.add("solver", "random_fractional_instances", fractional)
        report.notes.append(f"Solver checked on {checked} random networks (both capacity modes).")
        if short:
            report.notes.append(
                f"{short} random networks have a matching LP optimum below |E|; "
                "their overlapping groups leave edge mass unassigned."
            )
