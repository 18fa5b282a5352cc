"""Independent checks on certificates, plus two brute-force oracles.

Nothing here trusts solver diagnostics: every property is recomputed from
the certificate's values and the raw instance with the primitives in
:mod:`farkas_balance.zp`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dichotomy import SmallSpectralSupport, VanishingBalanced
from .errors import ContainmentViolation, ModulusMismatch, SignPatternViolation, TooLarge
from .simplex import solve_lp
from .zp import PlaceSet, SupportSet, ZpFunction, convolve, dft, positive_support

VALUE_SLACK = 1e-12
L1_SLACK = 1e-8
ORACLE_MAX_P = 2000
MINORANT_TOL = 1e-10


def default_tolerance(p: int) -> float:
    return 1e-7 * p


@dataclass(frozen=True)
class Check:
    passed: bool
    worst: float
    threshold: float
    detail: str = ""


@dataclass
class VerificationReport:
    variant: str
    checks: dict = field(default_factory=dict)
    # reported on its own; not part of the verdict
    budget_bound: Optional[Check] = None
    tol: float = 0.0

    @property
    def verdict(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failed(self) -> list:
        return [name for name, c in self.checks.items() if not c.passed]

    def rows(self) -> list:
        out = [(name, c) for name, c in self.checks.items()]
        if self.budget_bound is not None:
            out.append(("budget_bound (informational)", self.budget_bound))
        return out

    def format_table(self) -> str:
        lines = [f"variant: {self.variant}", f"{'property':<30} {'result':<6} {'worst':>12} {'limit':>12}"]
        for name, c in self.rows():
            flag = "pass" if c.passed else "FAIL"
            lines.append(f"{name:<30} {flag:<6} {c.worst:>12.4g} {c.threshold:>12.4g}  {c.detail}".rstrip())
        lines.append(f"verdict: {'pass' if self.verdict else 'FAIL'}")
        return "\n".join(lines)


def _sign_violations(h: np.ndarray, support: SupportSet, strict: bool):
    s = support.signs()
    signed = s * h
    bad = signed <= 0 if strict else signed < 0
    return np.flatnonzero(bad), signed


def verify_certificate(cert, support: SupportSet, places: PlaceSet, E: int,
                       tol: Optional[float] = None) -> VerificationReport:
    """Recheck every property a certificate claims.

    ``tol`` bounds spectral quantities (default ``1e-7 * p``); the zero-sum
    check uses ``tol / p``.
    """
    p = support.p
    if cert.h.p != p or places.modulus.p != p:
        raise ModulusMismatch(
            f"certificate mod {cert.h.p}, support mod {p}, places mod {places.modulus.p}")
    tol = default_tolerance(p) if tol is None else float(tol)
    h = cert.h.values
    F = dft(cert.h).coeffs
    report = VerificationReport(cert.variant, tol=tol)
    checks = report.checks

    if isinstance(cert, VanishingBalanced):
        over = float(np.max(np.abs(h))) if p else 0.0
        checks["value_range"] = Check(over <= 1.0 + VALUE_SLACK, over, 1.0)
        bad, signed = _sign_violations(h, support, strict=False)
        worst = float(-signed.min()) if bad.size else 0.0
        checks["sign_pattern"] = Check(bad.size == 0, worst, 0.0,
                                       f"violations at {bad.tolist()}" if bad.size else "")
        total = abs(float(h.sum()))
        checks["zero_sum"] = Check(total <= tol / p, total, tol / p)
        l1 = float(np.abs(h).sum())
        checks["l1_bound"] = Check(l1 >= E - L1_SLACK, l1, float(E), ">= E")
        at_places = [abs(F[a % p]) for a in places.raw]
        worst = float(max(at_places, default=0.0))
        checks["spectral_vanishing"] = Check(worst <= tol, worst, tol)
        report.budget_bound = Check(True, 0.0, float((2 * places.k + 1) * E), "not applicable")
        return report

    if not isinstance(cert, SmallSpectralSupport):
        raise TypeError(f"unknown certificate type {type(cert).__name__}")

    allowed = places.closure()
    outside = [a for a in range(p) if a not in allowed]
    worst = float(np.max(np.abs(F[outside]))) if outside else 0.0
    checks["spectral_support"] = Check(worst <= tol, worst, tol)
    if cert.spectrum is not None:
        if cert.spectrum.p != p:
            raise ModulusMismatch("claimed spectrum lives on a different modulus")
        gap = float(np.max(np.abs(F - cert.spectrum.coeffs)))
        checks["spectrum_claim"] = Check(gap <= tol, gap, tol)

    exceptions = set(cert.exceptions)
    stray = sorted(n for n in exceptions if not 0 <= n < p)
    checks["exceptions_in_range"] = Check(not stray, float(len(stray)), 0.0,
                                          f"out of range {stray}" if stray else "")
    bad, _ = _sign_violations(h, support, strict=True)
    uncovered = sorted(set(bad.tolist()) - exceptions)
    checks["strict_sign_pattern"] = Check(
        not uncovered, float(len(uncovered)), 0.0,
        f"{bad.size} violations, uncovered {uncovered}" if uncovered else f"{bad.size} violations, all excepted")
    rounds = int(cert.rounds_before_separation)
    limit = (2 * places.t + 2) * rounds
    checks["exception_count"] = Check(len(exceptions) <= limit, float(len(exceptions)), float(limit),
                                      "<= (2t+2) * rounds")
    budget_limit = (2 * places.k + 1) * E
    report.budget_bound = Check(len(exceptions) <= budget_limit, float(len(exceptions)),
                               float(budget_limit), "<= (2k+1) * E")
    return report


def oracle_branch1(support: SupportSet, places: PlaceSet, max_p: int = ORACLE_MAX_P):
    """Largest ||h||_1 over balanced h in [-1,1]^p whose transform vanishes at the places.

    Writes h = s * u with u in [0,1]^p and s = +1 on the support, -1 off,
    and maximizes sum(u) subject to the 2t+1 real linear conditions
    sum(h) = 0, sum h(n) cos(2 pi n b/p) = 0, sum h(n) sin(2 pi n b/p) = 0.
    A vanishing certificate with budget E exists iff the optimum is >= E.

    Returns ``(max_l1, witness)``.
    """
    p = support.p
    if p > max_p:
        raise TooLarge(f"p = {p} exceeds the oracle guard {max_p}")
    if places.modulus.p != p:
        raise ModulusMismatch("places and support live on different moduli")
    s = support.signs()
    n = np.arange(p)
    rows = [np.ones(p)]
    for b in places.reduced:
        theta = 2 * np.pi * ((n * b) % p) / p
        rows += [np.cos(theta), np.sin(theta)]
    A_eq = np.vstack(rows) * s
    r = A_eq.shape[0]
    # variables: u (p) | z (p), with u + z = 1
    A = np.zeros((r + p, 2 * p))
    A[:r, :p] = A_eq
    A[r:, :p] = np.eye(p)
    A[r:, p:] = np.eye(p)
    b = np.concatenate([np.zeros(r), np.ones(p)])
    c = np.concatenate([-np.ones(p), np.zeros(p)])
    # reversed priority and Dantzig pricing: a different vertex path from the solver's
    start = [None] * r + list(range(p, 2 * p))
    res = solve_lp(A, b, c, basis=start, order=list(range(2 * p - 1, -1, -1)), rule="dantzig")
    u = np.clip(res.x[:p], 0.0, 1.0)
    return float(u.sum()), ZpFunction(support.modulus, s * u)


def brute_force_sumset(S: SupportSet, T: SupportSet) -> SupportSet:
    if S.p != T.p:
        raise ModulusMismatch(f"sets live mod {S.p} and {T.p}")
    p = S.p
    return SupportSet(S.modulus, frozenset((a + b) % p for a in S.members for b in T.members))


def demo_minorant(S: SupportSet, f: ZpFunction, tol: float = MINORANT_TOL) -> SupportSet:
    """Points where (f * 1_S) is positive, for f >= 0 on S and f <= 0 off S.

    Every positive term f(a) 1_S(n-a) needs a in S and n-a in S, so the
    result always lies inside S+S; this is checked against brute force.
    """
    if f.p != S.p:
        raise ModulusMismatch(f"function mod {f.p}, set mod {S.p}")
    bad, _ = _sign_violations(f.values, S, strict=False)
    if bad.size:
        raise SignPatternViolation(f"f has the wrong sign at {bad.tolist()}")
    out = positive_support(convolve(f, S.indicator()), tol)
    extra = out.members - brute_force_sumset(S, S).members
    if extra:
        raise ContainmentViolation(f"(f*S) positive outside S+S at {sorted(extra)}")
    return out
