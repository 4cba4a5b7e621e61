"""Augmenting-path solver for the multi-group matching problem.

Fractional capacities are handled by scaling: with D the least common denominator of
all capacities, every edge node supplies D units and capacity(v, g) becomes the integer
capacity(v, g) * D. The solver moves one unit per augmentation and divides by D at the end.

An augmenting matching assigns one fresh unit of an edge e_0 to an endpoint w_1 and, while
w_1 lacks room, moves a unit of another edge e_1 held by w_1 over to its other endpoint
w_2, and so on until some w_k has room. It is valid when, after applying it, every
(vertex, group) load is still within capacity, i.e. every group-specific flow stays
feasible.

Whole units of 1/D cannot reach every optimum, since the multi-group constraints are not
totally unimodular, and the breadth-first search is pruned. A stalled search is finished
by the exact rational LP in matching/linear_program.py.
"""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple

from core.errors import NoAugmentingMatchingError
from matching.linear_program import solve_matching_lp
from matching.matching import Matching
from matching.network import MgNetwork

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AugmentStep:
    """Moves one unit of edge `eid` from `source` (None for a fresh unit) to `target`."""

    eid: int
    source: Optional[int]
    target: int


@dataclass(frozen=True)
class AugmentingMatching:
    """A valid augmenting path, found in the residual network of `group` (None for the joint search)."""

    group: Optional[int]
    steps: Tuple[AugmentStep, ...]

    @property
    def arcs(self) -> Tuple[Tuple[object, object], ...]:
        """The s-t path as arcs: (s, e_0), (e_0, w_1), (w_1, e_1), (e_1, w_2), ..., (w_k, t)."""
        arcs: List[Tuple[object, object]] = [("s", ("e", self.steps[0].eid))]
        for step in self.steps:
            if step.source is not None:
                arcs.append((("v", step.source), ("e", step.eid)))
            arcs.append((("e", step.eid), ("v", step.target)))
        arcs.append((("v", self.steps[-1].target), "t"))
        return tuple(arcs)


class GroupFlowState:
    """Scaled unit assignment plus per-(vertex, group) loads.

    The flow of group g's network is read off the edges relevant to g: the source arc of an
    edge carries its assigned units, each middle arc the units held by that endpoint, and the
    sink arc of a vertex its load for g.
    """

    def __init__(self, network: MgNetwork):
        self.network = network
        self.oig = network.oig
        self.scale = network.scale()
        n_groups = network.n_groups
        self.units: List[List[int]] = [[0, 0] for _ in range(network.n_edges)]
        self.limits: List[List[int]] = [
            [int(cap * self.scale) for cap in network.capacities[v]] for v in range(self.oig.n_vertices)
        ]
        self.loads: List[List[int]] = [[0] * n_groups for _ in range(self.oig.n_vertices)]

    def side(self, eid: int, vertex: int) -> int:
        return 0 if vertex == self.oig.edges[eid].u else 1

    def held(self, eid: int, vertex: int) -> int:
        return self.units[eid][self.side(eid, vertex)]

    def unassigned(self, eid: int) -> int:
        return self.scale - self.units[eid][0] - self.units[eid][1]

    def slack(self, vertex: int, gid: int) -> int:
        return self.limits[vertex][gid] - self.loads[vertex][gid]

    @property
    def value_units(self) -> int:
        return sum(a + b for a, b in self.units)

    @property
    def value(self) -> Fraction:
        return Fraction(self.value_units, self.scale)

    @property
    def target_units(self) -> int:
        return self.scale * self.network.n_edges

    def group_flow(self, gid: int) -> Dict[Tuple[object, object], Fraction]:
        """Arc flows of the group's network, unscaled."""
        flows: Dict[Tuple[object, object], Fraction] = {}
        for eid in self.oig.group_index[gid]:
            edge = self.oig.edges[eid]
            flows[("s", ("e", eid))] = Fraction(self.units[eid][0] + self.units[eid][1], self.scale)
            flows[(("e", eid), ("v", edge.u))] = Fraction(self.units[eid][0], self.scale)
            flows[(("e", eid), ("v", edge.v))] = Fraction(self.units[eid][1], self.scale)
        for vertex in range(self.oig.n_vertices):
            flows[(("v", vertex), "t")] = Fraction(self.loads[vertex][gid], self.scale)
        return flows

    def is_group_feasible(self, gid: int) -> bool:
        """Source arcs carry at most one unit and sink arcs stay within capacity."""
        within_supply = all(self.unassigned(eid) >= 0 for eid in self.oig.group_index[gid])
        within_capacity = all(self.slack(v, gid) >= 0 for v in range(self.oig.n_vertices))
        return within_supply and within_capacity

    def apply(self, augmentation: AugmentingMatching) -> None:
        for step in augmentation.steps:
            groups = self.oig.edge_groups[step.eid]
            if step.source is not None:
                self.units[step.eid][self.side(step.eid, step.source)] -= 1
                for gid in groups:
                    self.loads[step.source][gid] -= 1
            self.units[step.eid][self.side(step.eid, step.target)] += 1
            for gid in groups:
                self.loads[step.target][gid] += 1

    def to_matching(self) -> Matching:
        flows = tuple((Fraction(a, self.scale), Fraction(b, self.scale)) for a, b in self.units)
        return Matching(network=self.network, flows=flows)


def _load_deltas(state: GroupFlowState, steps: Iterable[AugmentStep]) -> Dict[Tuple[int, int], int]:
    deltas: Dict[Tuple[int, int], int] = {}
    for step in steps:
        for gid in state.oig.edge_groups[step.eid]:
            if step.source is not None:
                deltas[(step.source, gid)] = deltas.get((step.source, gid), 0) - 1
            deltas[(step.target, gid)] = deltas.get((step.target, gid), 0) + 1
    return deltas


def is_valid_augmentation(state: GroupFlowState, steps: Tuple[AugmentStep, ...]) -> bool:
    """Every touched (vertex, group) load stays within capacity and every moved unit exists."""
    if not steps or steps[0].source is not None or state.unassigned(steps[0].eid) < 1:
        return False
    used = [step.eid for step in steps]
    if len(set(used)) != len(used):
        return False
    if any(state.held(step.eid, step.source) < 1 for step in steps[1:]):
        return False
    return all(state.slack(v, gid) >= delta for (v, gid), delta in _load_deltas(state, steps).items())


def _room_after(state: GroupFlowState, prefix: Tuple[AugmentStep, ...], vertex: int, gained: Iterable[int]) -> bool:
    """True iff `vertex` can absorb one more unit in each gained group on top of the prefix's changes."""
    deltas = _load_deltas(state, prefix)
    return all(state.slack(vertex, gid) >= deltas.get((vertex, gid), 0) + 1 for gid in gained)


def _breadth_first(state: GroupFlowState, allowed: Optional[Set[int]]) -> Optional[Tuple[AugmentStep, ...]]:
    """Multi-source BFS over (vertex, entering coordinate) states, sources and arcs in id order."""
    oig = state.oig
    edges = range(oig.n_edges) if allowed is None else sorted(allowed)
    sources = [eid for eid in edges if state.unassigned(eid) > 0]

    queue: deque = deque()
    visited: Set[Tuple[int, int]] = set()
    for eid in sources:
        edge = oig.edges[eid]
        for target in (edge.u, edge.v):
            path = (AugmentStep(eid=eid, source=None, target=target),)
            if _room_after(state, (), target, oig.edge_groups[eid]) and is_valid_augmentation(state, path):
                return path
            key = (target, edge.coord)
            if key not in visited:
                visited.add(key)
                queue.append(path)

    while queue:
        path = queue.popleft()
        last = path[-1]
        vertex = last.target
        on_path = {step.eid for step in path}
        entering_groups = set(oig.edge_groups[last.eid])
        for eid in oig.incident_edges[vertex]:
            if eid in on_path or (allowed is not None and eid not in allowed):
                continue
            if state.held(eid, vertex) < 1:
                continue
            leaving_groups = set(oig.edge_groups[eid])
            # The vertex keeps its load in shared groups and gains in the entering-only ones.
            if not _room_after(state, path[:-1], vertex, entering_groups - leaving_groups):
                continue
            target = oig.other_endpoint(eid, vertex)
            extended = path + (AugmentStep(eid=eid, source=vertex, target=target),)
            if _room_after(state, path, target, leaving_groups) and is_valid_augmentation(state, extended):
                return extended
            key = (target, oig.edges[eid].coord)
            if key not in visited:
                visited.add(key)
                queue.append(extended)
    return None


def find_valid_augmenting_matching(state: GroupFlowState) -> Optional[AugmentingMatching]:
    """Searches for a valid augmenting matching of the state's current assignment.

    Groups are tried in id order, each restricted to its relevant edges (its residual
    network); then a joint search over all edges, which also covers edges relevant to no
    group. Returns None when the matching is already complete or the search finds nothing.
    The search is not complete; solve_matching finishes a stalled state with the exact LP.
    """
    if state.value_units >= state.target_units:
        return None
    for gid, edge_ids in enumerate(state.oig.group_index):
        steps = _breadth_first(state, set(edge_ids))
        if steps is not None:
            return AugmentingMatching(group=gid, steps=steps)
    steps = _breadth_first(state, None)
    if steps is None:
        return None
    return AugmentingMatching(group=None, steps=steps)


def _assign_directly(state: GroupFlowState) -> int:
    """Applies every length-3 augmentation (fresh unit straight to an endpoint with room), in edge order."""
    applied = 0
    oig = state.oig
    for eid, edge in enumerate(oig.edges):
        groups = oig.edge_groups[eid]
        for target in (edge.u, edge.v):
            side = state.side(eid, target)
            room = min((state.slack(target, gid) for gid in groups), default=state.unassigned(eid))
            units = min(state.unassigned(eid), room)
            if units <= 0:
                continue
            state.units[eid][side] += units
            for gid in groups:
                state.loads[target][gid] += units
            applied += units
    return applied


AugmentObserver = Callable[[GroupFlowState, AugmentingMatching], None]


def solve_matching(
    network: MgNetwork, strict: bool = True, observer: Optional[AugmentObserver] = None
) -> Tuple[Matching, int]:
    """Runs augmentations until the matching has value |E|, then falls back to the exact LP.

    Each augmentation moves one unit of 1/D. When the search stalls below |E| the LP is
    solved exactly with rational simplex and its optimum replaces the augmented matching
    when larger, so the returned value is always the LP optimum. `observer` sees the state
    after every augmentation.

    Returns the matching and the number of unit augmentations (at most D * |E|).

    Raises:
        NoAugmentingMatchingError: If the LP optimum is below |E| and `strict` is set.
            Otherwise that optimal, not prediction-sufficient matching is returned.
    """
    state = GroupFlowState(network)
    iterations = _assign_directly(state)
    logger.debug(f"Direct assignment placed {iterations} of {state.target_units} units.")

    while state.value_units < state.target_units:
        augmentation = find_valid_augmenting_matching(state)
        if augmentation is None:
            break
        state.apply(augmentation)
        iterations += 1
        if observer is not None:
            observer(state, augmentation)
        logger.debug(f"Iteration {iterations}: augmented along {len(augmentation.steps)} steps.")

    matching = state.to_matching()
    if state.value_units < state.target_units:
        logger.debug(f"Augmenting search stalled at {state.value} (scale {state.scale}); solving the LP exactly.")
        optimum = solve_matching_lp(network).matching
        if optimum.value > matching.value:
            matching = optimum
        if matching.value < network.n_edges:
            message = (
                f"Matching LP optimum {matching.value} is below |E| = {network.n_edges}; "
                f"{network.n_edges - matching.value} of edge mass stays unassigned."
            )
            if strict:
                logger.error(message)
                raise NoAugmentingMatchingError(message)
            logger.warning(message)

    logger.debug(
        f"Solved network with {network.n_edges} edges: value {matching.value}, "
        f"integral={matching.is_integral()}, iterations={iterations}."
    )
    return matching, iterations
