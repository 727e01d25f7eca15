"""Exact-rational simplex for small linear programs.

Solves max c.x subject to A x <= b, x >= 0 with Fraction arithmetic and
Bland's pivoting rule, so termination is guaranteed and no tolerance enters.
A phase-1 pass with artificial variables handles negative right-hand sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list | None = None
    objective: Fraction | None = None
    duals: list | None = None  # one multiplier per constraint row


class _Tableau:
    """Dense simplex tableau: rows = constraints, columns = all variables."""

    def __init__(self, a, b, ncols):
        self.a = a  # list of rows of Fractions, one per basic constraint
        self.b = b
        self.ncols = ncols
        self.basis = []  # basic variable per row

    def pivot(self, row, col):
        prow = self.a[row]
        inv = 1 / prow[col]
        self.a[row] = [v * inv for v in prow]
        self.b[row] *= inv
        prow = self.a[row]
        for i in range(len(self.a)):
            if i == row:
                continue
            f = self.a[i][col]
            if f:
                self.a[i] = [v - f * p for v, p in zip(self.a[i], prow)]
                self.b[i] -= f * self.b[row]
        self.basis[row] = col


def _run_simplex(tab: _Tableau, cost):
    """Maximize cost over the tableau with Bland's rule.

    Returns (status, reduced) where reduced is the final reduced-cost row.
    """
    m = len(tab.a)
    while True:
        # reduced costs: c_j - c_B . B^-1 A_j
        cb = [cost[tab.basis[i]] for i in range(m)]
        reduced = list(cost)
        for i in range(m):
            if cb[i]:
                for j in range(tab.ncols):
                    if tab.a[i][j]:
                        reduced[j] -= cb[i] * tab.a[i][j]
        entering = None
        for j in range(tab.ncols):
            if reduced[j] > 0 and j not in tab.basis:
                entering = j  # Bland: smallest index
                break
        if entering is None:
            return "optimal", reduced
        leaving = None
        best = None
        for i in range(m):
            coef = tab.a[i][entering]
            if coef > 0:
                ratio = tab.b[i] / coef
                if best is None or ratio < best or (
                    ratio == best and tab.basis[i] < tab.basis[leaving]
                ):
                    best = ratio
                    leaving = i
        if leaving is None:
            return "unbounded", reduced
        tab.pivot(leaving, entering)


def solve_lp(a_rows, b, c) -> LpSolution:
    """Two-phase simplex for max c.x, A x <= b, x >= 0 (exact rationals)."""
    m = len(a_rows)
    n = len(c)
    a = [[Fraction(v) for v in row] for row in a_rows]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    # slack variables; flip rows with negative rhs and add artificials
    nslack = m
    art_rows = [i for i in range(m) if b[i] < 0]
    nart = len(art_rows)
    ncols = n + nslack + nart
    tab_a = []
    for i in range(m):
        row = list(a[i]) + [Fraction(0)] * (nslack + nart)
        row[n + i] = Fraction(1)
        tab_a.append(row)
    art_index = {}
    for j, i in enumerate(art_rows):
        tab_a[i] = [-v for v in tab_a[i]]
        b[i] = -b[i]
        tab_a[i][n + nslack + j] = Fraction(1)
        art_index[i] = n + nslack + j
    tab = _Tableau(tab_a, b, ncols)
    tab.basis = [art_index.get(i, n + i) for i in range(m)]

    if nart:
        phase1 = [Fraction(0)] * ncols
        for j in range(n + nslack, ncols):
            phase1[j] = Fraction(-1)
        status, _ = _run_simplex(tab, phase1)
        assert status == "optimal"
        if any(tab.b[i] != 0 and tab.basis[i] >= n + nslack for i in range(m)):
            return LpSolution("infeasible")
        # drive remaining artificial basics out where possible
        for i in range(m):
            if tab.basis[i] >= n + nslack:
                for j in range(n + nslack):
                    if tab.a[i][j] != 0:
                        tab.pivot(i, j)
                        break
        # rows still basic in an artificial variable are redundant zero rows
        keep = [i for i in range(m) if tab.basis[i] < n + nslack]
        for i in range(m):
            if i not in keep:
                assert tab.b[i] == 0 and all(v == 0 for v in tab.a[i][: n + nslack])
        tab.a = [tab.a[i][: n + nslack] for i in keep]
        tab.b = [tab.b[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]
        tab.ncols = n + nslack

    cost = list(c) + [Fraction(0)] * nslack
    status, reduced = _run_simplex(tab, cost)
    if status != "optimal":
        return LpSolution(status)
    x = [Fraction(0)] * n
    for i, bv in enumerate(tab.basis):
        if bv < n:
            x[bv] = tab.b[i]
    obj = sum(ci * xi for ci, xi in zip(c, x))
    # dual values read off the slack reduced costs: y_i = -reduced[slack_i];
    # rows dropped as redundant carry multiplier 0
    duals = [-reduced[n + i] for i in range(m)]
    return LpSolution("optimal", x, obj, duals)


def verify_optimality_certificate(a_rows, b, c, sol: LpSolution) -> bool:
    """Exact complementary-slackness check for a solved max LP.

    Primal feasibility, dual feasibility (y >= 0, y^T A >= c), equal
    objectives, and both slackness products vanishing, all over Fractions.
    """
    if sol.status != "optimal":
        return False
    x, y = sol.x, sol.duals
    m, n = len(a_rows), len(c)
    ax = [sum(Fraction(a_rows[i][j]) * x[j] for j in range(n)) for i in range(m)]
    if any(x[j] < 0 for j in range(n)) or any(ax[i] > Fraction(b[i]) for i in range(m)):
        return False
    if any(y[i] < 0 for i in range(m)):
        return False
    yta = [sum(y[i] * Fraction(a_rows[i][j]) for i in range(m)) for j in range(n)]
    if any(yta[j] < Fraction(c[j]) for j in range(n)):
        return False
    slack_primal = sum(y[i] * (Fraction(b[i]) - ax[i]) for i in range(m))
    slack_dual = sum((yta[j] - Fraction(c[j])) * x[j] for j in range(n))
    return slack_primal == 0 and slack_dual == 0
