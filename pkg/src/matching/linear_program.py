"""Exact rational simplex for the multi-group matching LP.

The primal is: maximize sum of f_{e,w} over every arc subject to f_{e,u} + f_{e,v} <= 1 per
edge node and sum_{e at v, e in E_g} f_{e,v} <= capacity(v, g) per (vertex, group), f >= 0.
Every right-hand side is non-negative, so the all-slack basis is feasible and no first phase
is needed. Pivoting follows Bland's rule, which cannot cycle on degenerate vertices.

At the optimum the reduced cost of each slack is minus the dual value of its row, which
gives a DualCertificate of the same value as the matching.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from matching.duality import DualCertificate, trivial_dual
from matching.matching import Matching
from matching.network import MgNetwork

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LpSolution:
    """An optimal matching with its dual certificate and the number of simplex pivots."""

    matching: Matching
    certificate: DualCertificate
    pivots: int

    @property
    def value(self) -> Fraction:
        return self.matching.value


class SimplexTableau:
    """Dictionary form x_B = b - A x_N with objective z = value + c x_N.

    Variables are labeled by integers: 2 * eid + side for the arcs of edge eid, then one
    slack per row. Rows are sparse dicts from nonbasic column to coefficient.
    """

    def __init__(self, rows: List[Dict[int, Fraction]], b: List[Fraction], c: List[Fraction]):
        self.m = len(rows)
        self.n = len(c)
        self.A = rows
        self.b = b
        self.c = c
        self.value = Fraction(0)
        self.nb_vars = list(range(self.n))
        self.b_vars = list(range(self.n, self.n + self.m))

    def pivot(self, i: int, j: int) -> None:
        row = self.A[i]
        piv = row[j]
        delta = self.c[j] / piv
        self.value += delta * self.b[i]

        pivot_row = {col: coef / piv for col, coef in row.items() if col != j}
        pivot_row[j] = 1 / piv
        self.b[i] /= piv
        self.A[i] = pivot_row

        for col, coef in pivot_row.items():
            if col != j:
                self.c[col] -= self.c[j] * coef
        self.c[j] = -delta

        for k in range(self.m):
            if k == i:
                continue
            f = self.A[k].get(j)
            if not f:
                continue
            other = self.A[k]
            del other[j]
            for col, coef in pivot_row.items():
                updated = -f * coef if col == j else other.get(col, 0) - f * coef
                if updated:
                    other[col] = updated
                else:
                    other.pop(col, None)
            self.b[k] -= f * self.b[i]

        self.nb_vars[j], self.b_vars[i] = self.b_vars[i], self.nb_vars[j]

    def bland_step(self) -> bool:
        """One pivot; False once no reduced cost is positive."""
        entering = [(self.nb_vars[j], j) for j in range(self.n) if self.c[j] > 0]
        if not entering:
            return False
        _, j = min(entering)
        # Every row bounds its variables, so some ratio always exists.
        _, _, i = min(
            (self.b[i] / self.A[i][j], self.b_vars[i], i) for i in range(self.m) if self.A[i].get(j, 0) > 0
        )
        self.pivot(i, j)
        return True

    def solve(self) -> int:
        pivots = 0
        while self.bland_step():
            pivots += 1
        return pivots

    def primal(self) -> Dict[int, Fraction]:
        return {var: self.b[i] for i, var in enumerate(self.b_vars)}

    def dual(self) -> Dict[int, Fraction]:
        """Row index -> dual value, read off the reduced costs of nonbasic slacks."""
        return {var - self.n: -self.c[j] for j, var in enumerate(self.nb_vars) if var >= self.n}


Rows = List[Dict[int, Fraction]]


def _rows_for(network: MgNetwork) -> Tuple[Rows, List[Fraction], List[Optional[Tuple[int, int]]]]:
    """Constraint rows, right-hand sides and the (vertex, gid) of each capacity row (None for edge rows)."""
    oig = network.oig
    rows: Rows = []
    b: List[Fraction] = []
    owners: List[Optional[Tuple[int, int]]] = []
    for eid in range(oig.n_edges):
        rows.append({2 * eid: Fraction(1), 2 * eid + 1: Fraction(1)})
        b.append(Fraction(1))
        owners.append(None)
    for vertex in range(oig.n_vertices):
        for gid in range(network.n_groups):
            columns = {
                2 * eid + (0 if vertex == oig.edges[eid].u else 1): Fraction(1)
                for eid in oig.incident_edges[vertex]
                if gid in oig.edge_groups[eid]
            }
            if columns:
                rows.append(columns)
                b.append(network.capacity(vertex, gid))
                owners.append((vertex, gid))
    return rows, b, owners


def solve_matching_lp(network: MgNetwork) -> LpSolution:
    """Solves the matching LP exactly and returns an optimal matching with a dual of equal value."""
    oig = network.oig
    rows, b, owners = _rows_for(network)
    tableau = SimplexTableau(rows, b, [Fraction(1)] * (2 * oig.n_edges))
    pivots = tableau.solve()

    primal = tableau.primal()
    zero = Fraction(0)
    flows = tuple((primal.get(2 * eid, zero), primal.get(2 * eid + 1, zero)) for eid in range(oig.n_edges))
    matching = Matching(network=network, flows=flows)

    y = [Fraction(0)] * oig.n_edges
    z = [[Fraction(0)] * oig.n_vertices for _ in range(network.n_groups)]
    for row, price in tableau.dual().items():
        owner = owners[row]
        if owner is None:
            y[row] = price
        else:
            vertex, gid = owner
            z[gid][vertex] = price
    certificate = DualCertificate(network=network, y=tuple(y), z=tuple(tuple(r) for r in z))

    logger.debug(f"Simplex solved {len(rows)} rows in {pivots} pivots: value {tableau.value}.")
    return LpSolution(matching=matching, certificate=certificate, pivots=pivots)


def optimality_certificate(matching: Matching) -> DualCertificate:
    """A dual of the matching's value when it is optimal: the trivial dual at value |E|, else the LP dual."""
    network = matching.network
    if matching.value == network.n_edges:
        return trivial_dual(network)
    return solve_matching_lp(network).certificate
