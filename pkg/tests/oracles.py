"""Slow, independent reference computations used only by the tests.

None of these touch the package's transform, simplex or geometry code.
"""

import cmath
import itertools
import math
from fractions import Fraction

import numpy as np


def naive_dft(values, p):
    return [sum(values[n] * cmath.exp(2j * math.pi * ((a * n) % p) / p) for n in range(p))
            for a in range(p)]


def naive_idft(coeffs, p):
    return [sum(coeffs[a] * cmath.exp(-2j * math.pi * ((a * n) % p) / p) for a in range(p)) / p
            for n in range(p)]


def naive_convolution(f, g, p):
    out = [0.0] * p
    for a in range(p):
        for b in range(p):
            out[(a + b) % p] += f[a] * g[b]
    return out


def exact_origin_in_hull(columns) -> bool:
    """Phase one in exact rationals: is {M v = 0, sum v = 1, v >= 0} feasible?

    ``columns`` is a list of integer (or Fraction) vectors.
    """
    n = len(columns)
    m = len(columns[0])
    rows = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(0)] for i in range(m)]
    rows.append([Fraction(1)] * n + [Fraction(1)])
    for r in rows:
        if r[-1] < 0:
            r[:] = [-x for x in r]
    nr = len(rows)
    # append artificials
    for i, r in enumerate(rows):
        r[-1:-1] = [Fraction(int(i == k)) for k in range(nr)]
    ncol = n + nr
    basis = [n + i for i in range(nr)]
    cost = [Fraction(0)] * n + [Fraction(1)] * nr + [Fraction(0)]
    obj = cost[:]
    for i, r in enumerate(rows):
        obj = [o - x for o, x in zip(obj, r)]
    while True:
        enter = next((j for j in range(ncol) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[-1] / r[enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        i = best[1]
        piv = rows[i][enter]
        rows[i] = [x / piv for x in rows[i]]
        for k in range(nr):
            if k != i and rows[k][enter] != 0:
                f = rows[k][enter]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[i])]
        f = obj[enter]
        obj = [a - f * b for a, b in zip(obj, rows[i])]
        basis[i] = enter
    return -obj[-1] == 0


def scipy_separation_delta(X):
    """max delta s.t. w.x_j >= delta, |w|_inf <= 1, via HiGHS."""
    from scipy.optimize import linprog

    m, n = X.shape
    c = np.zeros(m + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-X.T, np.ones((n, 1))])
    bounds = [(-1, 1)] * m + [(None, None)]
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(n), bounds=bounds, method="highs")
    assert res.status == 0
    return -res.fun


def enumerate_branch1(signs, reduced, p):
    """max sum(u), u in [0,1]^p, A (s*u) = 0, by trying every vertex pattern.

    Each coordinate is fixed at 0, fixed at 1 or left free; free ones are
    solved from the equality system (at most as many as its rows).
    """
    n = np.arange(p)
    rows = [np.ones(p)]
    for b in reduced:
        theta = 2 * np.pi * ((n * b) % p) / p
        rows += [np.cos(theta), np.sin(theta)]
    A = np.vstack(rows) * np.asarray(signs)
    r = A.shape[0]
    best = 0.0
    for pattern in itertools.product((0, 1, 2), repeat=p):
        free = [i for i in range(p) if pattern[i] == 2]
        if len(free) > r:
            continue
        u = np.array([1.0 if x == 1 else 0.0 for x in pattern])
        if free:
            rhs = -A @ u
            sol, *_ = np.linalg.lstsq(A[:, free], rhs, rcond=None)
            u[free] = sol
        if np.all(u >= -1e-9) and np.all(u <= 1 + 1e-9) and np.max(np.abs(A @ u)) <= 1e-9:
            best = max(best, float(u.sum()))
    return best
