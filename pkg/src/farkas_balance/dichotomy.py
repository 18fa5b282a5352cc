"""Balanced function or small-spectral-support separator.

Given g: Z_p -> [0,1], nonzero places a_1..a_k and a budget E >= 0, the
solver returns one of two certificates:

``VanishingBalanced``
    h: Z_p -> [-1,1], h >= 0 on support(g), h <= 0 off it, sum(h) = 0,
    ||h||_1 >= E, and the transform of h vanishes at every a_i.

``SmallSpectralSupport``
    a real trigonometric polynomial h whose transform lives on
    {0, +-a_1, ..., +-a_k}, strictly positive on support(g) and strictly
    negative off it except on a recorded set of indices.

Each point j of Z_p becomes the column s(j) * (1, cos(2 pi j b_1/p),
sin(2 pi j b_1/p), ..., cos(2 pi j b_t/p), sin(2 pi j b_t/p)), s(j) = +1 on
the support and -1 off it, with b_1..b_t the places folded into
1..(p-1)/2.  Each round asks whether 0 is in the hull of the surviving
columns.  A hull witness is stored and its columns removed; after E such
rounds the stored witnesses add up to a balanced h.  A separating normal w
instead gives h(x) = w . (column of x with s = +1) directly, and only the
removed columns can carry the wrong sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Sequence, Union

import numpy as np

from . import __version__
from .errors import DisjointnessViolation, EmptyMatrix, LengthMismatch, ModulusMismatch
from .geometry import (
    GeometryConfig,
    PointMatrix,
    SeparatingNormal,
    SparseCoefficients,
    origin_in_hull,
)
from .zp import (
    DEFAULT_TOL_DFT,
    PlaceSet,
    Spectrum,
    SupportSet,
    ZpFunction,
    reduce_places,
    support_of,
)


@dataclass(frozen=True)
class SolveConfig:
    E: int
    tol_hull: float = 1e-9
    tol_sep: float = 1e-9
    tol_dft: float = DEFAULT_TOL_DFT
    deterministic: bool = True

    def __post_init__(self):
        if isinstance(self.E, bool) or int(self.E) != self.E or self.E < 0:
            raise ValueError(f"E must be a nonnegative integer, got {self.E!r}")
        object.__setattr__(self, "E", int(self.E))

    def geometry(self) -> GeometryConfig:
        return GeometryConfig(tol_hull=self.tol_hull, tol_sep=self.tol_sep)

    def echo(self) -> dict:
        return asdict(self)


@dataclass
class IterationState:
    round: int = 1
    deleted: set = field(default_factory=set)
    collected: list = field(default_factory=list)
    nonzeros: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    pivots: int = 0

    def absorb(self, coeffs: SparseCoefficients):
        labels = set(coeffs.labels)
        if labels & self.deleted:
            raise DisjointnessViolation(
                f"round {self.round} reused deleted columns {sorted(labels & self.deleted)}")
        self.collected.append(coeffs)
        self.deleted |= labels
        self.nonzeros.append(len(coeffs))
        self.residuals.append(coeffs.residual)


@dataclass(frozen=True, eq=False)
class VanishingBalanced:
    h: ZpFunction
    rounds: int
    l1_norm: float
    diagnostics: dict = field(default_factory=dict)

    variant = "vanishing_balanced"


@dataclass(frozen=True, eq=False)
class SmallSpectralSupport:
    h: ZpFunction
    spectrum: Spectrum
    exceptions: frozenset
    rounds_before_separation: int
    margin: float
    diagnostics: dict = field(default_factory=dict)

    variant = "small_spectral_support"


Certificate = Union[VanishingBalanced, SmallSpectralSupport]


def _trig_rows(p: int, reduced: Sequence[int], idx: np.ndarray) -> np.ndarray:
    """Rows 1, cos(2 pi j b/p), sin(2 pi j b/p), ... evaluated at each j in idx."""
    rows = [np.ones(idx.size)]
    for b in reduced:
        theta = 2 * np.pi * ((idx * b) % p) / p
        rows.append(np.cos(theta))
        rows.append(np.sin(theta))
    return np.vstack(rows)


def build_sign_matrix(support: SupportSet, places: PlaceSet, deleted=frozenset()) -> PointMatrix:
    p = support.p
    if places.modulus.p != p:
        raise ModulusMismatch(f"support lives mod {p}, places mod {places.modulus.p}")
    idx = np.array([j for j in range(p) if j not in deleted], dtype=int)
    if idx.size == 0:
        raise EmptyMatrix("every column has been deleted")
    signs = support.signs()[idx]
    return PointMatrix(_trig_rows(p, places.reduced, idx) * signs, tuple(idx.tolist()))


def assemble_vanishing(collected: Sequence[SparseCoefficients], support: SupportSet) -> ZpFunction:
    """h = s * (v_1 + ... + v_T) with s = +1 on the support and -1 off it."""
    p = support.p
    V = np.zeros(p)
    seen = set()
    for coeffs in collected:
        labels = set(coeffs.labels)
        if labels & seen:
            raise DisjointnessViolation(f"labels {sorted(labels & seen)} used twice")
        seen |= labels
        for lbl, w in coeffs.entries:
            V[lbl] = w
    return ZpFunction(support.modulus, support.signs() * V)


def assemble_spectral(w: Union[SeparatingNormal, np.ndarray], places: PlaceSet):
    """The trigonometric polynomial with coefficient vector ``w`` and its spectrum.

    h(x) = w[0] + sum_j w[2j-1] cos(2 pi x b_j/p) + w[2j] sin(2 pi x b_j/p).
    With F(a) = sum_x h(x) e^{2 pi i a x/p} this gives F(0) = p w[0],
    F(b_j) = p (w[2j-1] + i w[2j]) / 2 and F(-b_j) its conjugate.
    """
    w = np.asarray(w.w if isinstance(w, SeparatingNormal) else w, dtype=float)
    p, t = places.modulus.p, places.t
    if w.shape != (2 * t + 1,):
        raise LengthMismatch(f"expected {2 * t + 1} coefficients, got {w.shape}")
    h = ZpFunction(places.modulus, w @ _trig_rows(p, places.reduced, np.arange(p)))
    coeffs = np.zeros(p, dtype=complex)
    coeffs[0] = p * w[0]
    for j, b in enumerate(places.reduced):
        c = p * complex(w[2 * j + 1], w[2 * j + 2]) / 2
        coeffs[b] = c
        coeffs[(-b) % p] = c.conjugate()
    return h, Spectrum(places.modulus, coeffs)


def _as_support(g) -> SupportSet:
    if isinstance(g, SupportSet):
        return g
    if isinstance(g, ZpFunction):
        return support_of(g)
    raise TypeError("g must be a ZpFunction or a SupportSet")


def _diagnostics(state: IterationState, support, places, cfg, **extra):
    d = {
        "p": support.p,
        "k": places.k,
        "t": places.t,
        "rounds": len(state.collected),
        "deleted_count": len(state.deleted),
        "nonzeros_per_round": list(state.nonzeros),
        "residuals_per_round": list(state.residuals),
        "pivots": state.pivots,
        "solver_version": __version__,
        "config": cfg.echo(),
    }
    d.update(extra)
    return d


def run_dichotomy(g, places_raw, cfg: SolveConfig) -> Certificate:
    """Run the hull/separation rounds and return one certificate.

    ``g`` is a ZpFunction with values in [0,1] or directly a SupportSet;
    ``places_raw`` is a list of nonzero places or a PlaceSet.
    """
    support = _as_support(g)
    places = places_raw if isinstance(places_raw, PlaceSet) \
        else reduce_places(places_raw, support.modulus)
    state = IterationState()
    if cfg.E == 0:
        return VanishingBalanced(ZpFunction.zeros(support.modulus), 0, 0.0,
                                 _diagnostics(state, support, places, cfg))

    geo = cfg.geometry()
    for r in range(1, cfg.E + 1):
        state.round = r
        try:
            M = build_sign_matrix(support, places, state.deleted)
        except EmptyMatrix:
            # nothing left to separate: any normal separates the empty set
            w = np.zeros(2 * places.t + 1)
            w[0] = 1.0
            return _spectral(SeparatingNormal(w, math.inf), state, support, places, cfg,
                             vacuous=True)
        outcome = origin_in_hull(M, geo)
        state.pivots += outcome.pivots
        if not outcome.in_hull:
            return _spectral(outcome.witness, state, support, places, cfg, vacuous=False)
        state.absorb(outcome.witness)

    h = assemble_vanishing(state.collected, support)
    return VanishingBalanced(h, len(state.collected), h.l1_norm(),
                             _diagnostics(state, support, places, cfg))


def _spectral(normal, state, support, places, cfg, vacuous):
    h, spec = assemble_spectral(normal, places)
    diag = _diagnostics(state, support, places, cfg, margin=normal.margin, vacuous=vacuous,
                        w=[float(x) for x in normal.w])
    return SmallSpectralSupport(h, spec, frozenset(state.deleted), len(state.collected),
                                normal.margin, diag)
