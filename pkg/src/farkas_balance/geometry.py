"""Origin-in-hull test for the columns of a matrix.

Given columns x_1..x_n in R^m, exactly one of the following is produced:

* convex weights v >= 0, sum(v) = 1, with M v = 0 and at most m+1 nonzero
  weights (a Caratheodory-sparse witness that 0 lies in the hull), or
* a unit normal w with w . x_j >= margin > 0 for every column.

The first comes from a phase-one simplex on {M v = 0, 1.v = 1, v >= 0},
whose basic solutions are automatically sparse.  The second comes from the
program ``max delta  s.t.  w . x_j >= delta, |w_i| <= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import NoStrictSeparation, NumericalAmbiguity, ResidualBlowup
from .simplex import solve_lp


@dataclass(frozen=True)
class GeometryConfig:
    tol_hull: float = 1e-9
    tol_sep: float = 1e-9
    tol_rank: float = 1e-10
    # weights at or below this are dropped before sparsification
    tol_weight: float = 1e-14

    def __post_init__(self):
        for name in ("tol_hull", "tol_sep", "tol_rank"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True, eq=False)
class PointMatrix:
    """An m x n_r matrix whose columns carry labels (original indices)."""

    entries: np.ndarray
    col_labels: tuple = None

    def __post_init__(self):
        M = np.array(self.entries, dtype=float, copy=True)
        if M.ndim != 2 or M.shape[0] < 1:
            raise ValueError("entries must be a 2-d array with at least one row")
        if not np.all(np.isfinite(M)):
            raise ValueError("entries must be finite")
        labels = tuple(range(M.shape[1])) if self.col_labels is None \
            else tuple(int(c) for c in self.col_labels)
        if len(labels) != M.shape[1]:
            raise ValueError("one label per column required")
        if len(set(labels)) != len(labels):
            raise ValueError("column labels must be distinct")
        M.setflags(write=False)
        object.__setattr__(self, "entries", M)
        object.__setattr__(self, "col_labels", labels)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n_r(self) -> int:
        return self.entries.shape[1]

    @property
    def underdetermined(self) -> bool:
        """True when n_r <= m, i.e. fewer columns than the usual n > m setting."""
        return self.n_r <= self.m

    def column(self, label: int) -> np.ndarray:
        return self.entries[:, self.col_labels.index(label)]

    def scaled(self, lam: float) -> "PointMatrix":
        return PointMatrix(self.entries * lam, self.col_labels)


@dataclass(frozen=True)
class SparseCoefficients:
    entries: tuple                 # ((label, weight), ...), labels ascending
    residual: float = 0.0          # ||M v||_inf as achieved
    reduction_steps: int = 0

    @property
    def labels(self) -> tuple:
        return tuple(lbl for lbl, _ in self.entries)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.entries])

    def __len__(self):
        return len(self.entries)

    def dense(self, labels: Sequence[int]) -> np.ndarray:
        """Weights laid out along ``labels`` (zero where absent)."""
        pos = {lbl: i for i, lbl in enumerate(labels)}
        out = np.zeros(len(labels))
        for lbl, w in self.entries:
            out[pos[lbl]] = w
        return out


@dataclass(frozen=True, eq=False)
class SeparatingNormal:
    w: np.ndarray
    margin: float
    # optimum of the box-constrained program, before rescaling w
    box_delta: float = float("nan")


@dataclass(frozen=True)
class HullOutcome:
    witness: Union[SparseCoefficients, SeparatingNormal]
    pivots: int
    underdetermined: bool
    phase1_objective: float = 0.0
    nonzeros: Optional[int] = None

    @property
    def in_hull(self) -> bool:
        return isinstance(self.witness, SparseCoefficients)


def _scale(X: np.ndarray) -> float:
    """Largest entry magnitude; the LPs see X / scale so pivoting ignores overall scale."""
    s = float(np.max(np.abs(X))) if X.size else 0.0
    return s if s > 0 else 1.0


def _sparse_from_dense(labels, v, residual, steps):
    idx = np.flatnonzero(v > 0)
    entries = tuple((labels[i], float(v[i])) for i in idx)
    return SparseCoefficients(entries, float(residual), steps)


def caratheodory_reduce(M: PointMatrix, v, cfg: GeometryConfig = GeometryConfig()) -> SparseCoefficients:
    """Shrink a convex combination hitting the origin to an affinely independent one.

    While the active columns, stacked on a row of ones, have a null
    direction d, step along -d until some weight hits zero.  Neither
    M v nor sum(v) changes along d, so what remains is a convex
    combination of at most m+1 columns that still sums to zero.
    """
    X = M.entries
    v = np.array(v, dtype=float).reshape(-1)
    if v.shape[0] != M.n_r:
        raise ValueError("coefficient vector length must match the column count")
    if np.any(v < 0):
        raise ValueError("coefficients must be nonnegative")
    v[v <= cfg.tol_weight] = 0.0
    v /= v.sum()
    start_res = float(np.max(np.abs(X @ v)))
    if start_res > cfg.tol_hull:
        raise ValueError(f"input residual {start_res:.3e} exceeds tol_hull")

    steps = 0
    while True:
        active = np.flatnonzero(v > 0)
        if active.size <= 1:
            break
        A = np.vstack([X[:, active], np.ones(active.size)])
        _, s, vt = np.linalg.svd(A, full_matrices=True)
        if active.size <= A.shape[0] and s[-1] > cfg.tol_rank * max(1.0, s[0]):
            break
        d = vt[-1]
        # orient so the largest component is positive (deterministic choice)
        if d[np.argmax(np.abs(d))] < 0:
            d = -d
        pos = np.flatnonzero(d > 0)
        ratios = v[active[pos]] / d[pos]
        hit = pos[np.argmin(ratios)]
        v[active] -= ratios.min() * d
        v[active[hit]] = 0.0
        v[v <= cfg.tol_weight] = 0.0
        v /= v.sum()
        steps += 1

    residual = float(np.max(np.abs(X @ v)))
    if residual > cfg.tol_hull * (1 + steps):
        raise ResidualBlowup(
            f"residual {residual:.3e} after {steps} reductions exceeds "
            f"{cfg.tol_hull * (1 + steps):.3e}")
    return _sparse_from_dense(M.col_labels, v, residual, steps)


def separating_normal(M: PointMatrix, cfg: GeometryConfig = GeometryConfig()) -> SeparatingNormal:
    """Strictly separating unit normal from ``max delta, w.x_j >= delta, |w|_inf <= 1``.

    Writing w = wp - wn with 0 <= wp, wn <= 1 and delta >= 0 puts the
    program in standard form with an all-slack feasible start at w = 0.
    """
    X = M.entries
    m, n = X.shape
    scale = _scale(X)
    Xs = X / scale
    # columns: wp (m) | wn (m) | delta | s (n) | zp (m) | zn (m)
    nv = 2 * m + 1 + n + 2 * m
    A = np.zeros((n + 2 * m, nv))
    A[:n, :m] = -Xs.T
    A[:n, m:2 * m] = Xs.T
    A[:n, 2 * m] = 1.0
    A[:n, 2 * m + 1:2 * m + 1 + n] = np.eye(n)
    off = 2 * m + 1 + n
    A[n:n + m, :m] = np.eye(m)
    A[n:n + m, off:off + m] = np.eye(m)
    A[n + m:, m:2 * m] = np.eye(m)
    A[n + m:, off + m:] = np.eye(m)
    b = np.concatenate([np.zeros(n), np.ones(2 * m)])
    c = np.zeros(nv)
    c[2 * m] = -1.0
    basis = list(range(2 * m + 1, 2 * m + 1 + n)) + list(range(off, off + 2 * m))
    res = solve_lp(A, b, c, basis=basis)
    delta = float(res.x[2 * m]) * scale
    w = res.x[:m] - res.x[m:2 * m]
    if res.status != "optimal" or delta <= cfg.tol_sep or not np.any(w):
        raise NoStrictSeparation(f"best box-normalized margin {delta:.3e} <= tol_sep")
    w = w / np.linalg.norm(w)
    margin = float(np.min(w @ X))
    if margin <= cfg.tol_sep:
        raise NoStrictSeparation(f"normalized margin {margin:.3e} <= tol_sep")
    w.setflags(write=False)
    return SeparatingNormal(w, margin, delta)


def origin_in_hull(M: PointMatrix, cfg: GeometryConfig = GeometryConfig()) -> HullOutcome:
    """Decide whether 0 lies in the convex hull of the columns of ``M``.

    Returns a :class:`HullOutcome` whose witness is either
    :class:`SparseCoefficients` (at most m+1 weights) or a
    :class:`SeparatingNormal`.  Raises :class:`NumericalAmbiguity` when the
    phase-one residual is above ``tol_hull`` and no separation margin above
    ``tol_sep`` exists either.
    """
    X = M.entries
    m, n = X.shape
    A = np.vstack([X / _scale(X), np.ones(n)])
    b = np.zeros(m + 1)
    b[-1] = 1.0
    res = solve_lp(A, b, feas_tol=cfg.tol_hull * (m + 1))
    pivots = res.pivots
    if res.status == "optimal" and res.x.sum() > 0:
        v = res.x / res.x.sum()
        if float(np.max(np.abs(X @ v))) <= cfg.tol_hull:
            coeffs = caratheodory_reduce(M, v, cfg)
            return HullOutcome(coeffs, pivots + coeffs.reduction_steps,
                               M.underdetermined, res.phase1_objective, len(coeffs))
    try:
        normal = separating_normal(M, cfg)
    except NoStrictSeparation as exc:
        raise NumericalAmbiguity(
            f"phase-one residual {res.phase1_objective:.3e} above tol_hull and "
            f"no strict separator: {exc}") from exc
    return HullOutcome(normal, pivots, M.underdetermined, res.phase1_objective)
