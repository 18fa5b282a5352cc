"""Dense tableau simplex with Bland's anti-cycling rule.

Problems are in standard form::

    minimize c.x  subject to  A x = b,  x >= 0.

Only what the hull test, the separation program and the balanced-function
oracle need is here: a two-phase driver, an optional caller-supplied
starting basis, a configurable column priority (Bland's rule picks the
first eligible column in that priority, so changing it changes the vertex
path without changing the optimum) and an optional Dantzig entering rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import NumericalAmbiguity

DEFAULT_PIVOT_TOL = 1e-11
# consecutive degenerate pivots after which the Dantzig rule hands over to Bland
STALL_LIMIT = 50


@dataclass
class LPResult:
    status: str                 # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray
    objective: float
    phase1_objective: float
    basis: list
    pivots: int


class _Tableau:
    """Rows 0..m-1 hold [A | b]; the last row holds reduced costs [d | -z]."""

    def __init__(self, A, b, basis, rank, tol):
        rows = np.hstack([A, b[:, None]])
        self.T = np.vstack([rows, np.zeros(rows.shape[1])])
        self.basis = list(basis)
        self.rank = np.asarray(rank)
        self.tol = tol
        self.pivots = 0

    @property
    def m(self):
        return self.T.shape[0] - 1

    def set_costs(self, c):
        T = self.T
        T[-1, :-1] = c
        T[-1, -1] = 0.0
        for i, j in enumerate(self.basis):
            if T[-1, j] != 0.0:
                T[-1] -= T[-1, j] * T[i]

    def pivot(self, i, j):
        T = self.T
        T[i] /= T[i, j]
        col = T[:, j].copy()
        col[i] = 0.0
        nz = np.flatnonzero(col)
        T[nz] -= col[nz, None] * T[i]
        T[:, j] = 0.0
        T[i, j] = 1.0
        rhs = T[:-1, -1]
        rhs[(rhs < 0) & (rhs > -self.tol)] = 0.0
        self.basis[i] = j
        self.pivots += 1

    def entering(self, allowed, steepest=False):
        d = self.T[-1, :-1]
        cand = np.flatnonzero((d < -self.tol) & allowed)
        if cand.size == 0:
            return None
        if steepest:
            return int(cand[np.argmin(d[cand])])
        return int(cand[np.argmin(self.rank[cand])])

    def leaving(self, j):
        colj = self.T[:-1, j]
        rows = np.flatnonzero(colj > self.tol)
        if rows.size == 0:
            return None
        ratios = self.T[rows, -1] / colj[rows]
        best = ratios.min()
        ties = rows[ratios <= best + self.tol * max(1.0, abs(best))]
        basics = np.array([self.basis[i] for i in ties])
        return int(ties[np.argmin(self.rank[basics])])

    def run(self, allowed, max_pivots, rule="bland"):
        stall = 0
        while True:
            j = self.entering(allowed, steepest=rule == "dantzig" and stall < STALL_LIMIT)
            if j is None:
                return "optimal"
            i = self.leaving(j)
            if i is None:
                return "unbounded"
            if self.pivots >= max_pivots:
                raise NumericalAmbiguity(f"simplex exceeded {max_pivots} pivots")
            stall = stall + 1 if self.T[i, -1] <= self.tol else 0
            self.pivot(i, j)

    def solution(self, n):
        x = np.zeros(self.T.shape[1] - 1)
        for i, j in enumerate(self.basis):
            x[j] = max(self.T[i, -1], 0.0)
        return x[:n]


def solve_lp(A, b, c=None, *, basis: Optional[Sequence[Optional[int]]] = None,
             order: Optional[Sequence[int]] = None, feas_tol: float = 1e-9,
             pivot_tol: float = DEFAULT_PIVOT_TOL, rule: str = "bland",
             max_pivots: int = 100_000) -> LPResult:
    """Solve ``min c.x, Ax = b, x >= 0``; ``c=None`` asks only for feasibility.

    Parameters
    ----------
    basis : sequence of int or None, optional
        Starting basic column for each row. A given column must be a unit
        vector on its row with ``b >= 0`` there; rows marked ``None`` get an
        artificial variable and go through phase one. Omitted entirely,
        every row gets an artificial.
    order : sequence of int, optional
        Column priority for Bland's rule; ``order[k]`` is the column tried
        k-th. Defaults to natural order.
    feas_tol : float
        Phase one declares infeasibility when the artificial mass left at
        its optimum exceeds this.
    rule : {"bland", "dantzig"}
        Entering-column rule. ``"dantzig"`` takes the most negative reduced
        cost and falls back to Bland after a run of degenerate pivots.
    """
    if rule not in ("bland", "dantzig"):
        raise ValueError(f"unknown pivot rule {rule!r}")
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    m, n = A.shape
    cost = np.zeros(n) if c is None else np.asarray(c, dtype=float).reshape(-1)
    start = [None] * m if basis is None else list(basis)

    rank_orig = np.empty(n, dtype=int)
    rank_orig[np.arange(n) if order is None else np.asarray(order)] = np.arange(n)

    art_rows = [i for i in range(m) if start[i] is None]
    na = len(art_rows)
    flip = np.zeros(m, dtype=bool)
    flip[art_rows] = b[art_rows] < 0
    A = np.where(flip[:, None], -A, A)
    b = np.where(flip, -b, b)
    art = np.zeros((m, na))
    for k, i in enumerate(art_rows):
        art[i, k] = 1.0
        start[i] = n + k
    rank = np.concatenate([rank_orig, n + np.arange(na)])
    tab = _Tableau(np.hstack([A, art]), b, start, rank, pivot_tol)

    phase1 = 0.0
    if na:
        tab.set_costs(np.concatenate([np.zeros(n), np.ones(na)]))
        tab.run(np.ones(n + na, dtype=bool), max_pivots, rule)
        phase1 = max(float(-tab.T[-1, -1]), 0.0)
        if phase1 > feas_tol:
            x = tab.solution(n)
            return LPResult("infeasible", x, float(cost @ x), phase1, list(tab.basis), tab.pivots)

        # drive leftover (zero-valued) artificials out of the basis, dropping
        # rows that turn out to be redundant
        keep = []
        for i in range(m):
            if tab.basis[i] < n:
                keep.append(i)
                continue
            row = tab.T[i, :n]
            cand = np.flatnonzero(np.abs(row) > pivot_tol)
            if cand.size:
                tab.pivot(i, int(cand[np.argmin(rank_orig[cand])]))
                keep.append(i)
        if len(keep) < m:
            tab.T = tab.T[keep + [m]]
            tab.basis = [tab.basis[i] for i in keep]

    if c is None:
        x = tab.solution(n)
        return LPResult("optimal", x, 0.0, phase1, list(tab.basis), tab.pivots)
    allowed = np.concatenate([np.ones(n, dtype=bool), np.zeros(na, dtype=bool)])
    tab.set_costs(np.concatenate([cost, np.zeros(na)]))
    status = tab.run(allowed, max_pivots, rule)
    x = tab.solution(n)
    return LPResult(status, x, float(cost @ x), phase1, list(tab.basis), tab.pivots)
