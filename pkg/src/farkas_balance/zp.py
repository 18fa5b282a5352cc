"""Functions on the cyclic group Z_p: Fourier transform, convolution, places.

The Fourier convention is

    F(a) = sum_n f(n) * exp(+2*pi*i*a*n/p)

and the inverse carries the 1/p factor with the opposite sign in the
exponent.  Transforms are direct O(p^2) sums; the phase ``a*n`` is reduced
mod p before it reaches ``exp`` so large indices do not lose accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    LengthMismatch,
    ModulusMismatch,
    NonFiniteValue,
    NotPrime,
    PlaceError,
    RangeViolation,
    SymmetryViolation,
    ZeroPlace,
)

DEFAULT_TOL_DFT = 1e-9


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or int(self.p) != self.p:
            raise NotPrime(f"modulus must be an integer, got {self.p!r}")
        object.__setattr__(self, "p", int(self.p))
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def __int__(self):
        return self.p


ModulusLike = Union[PrimeModulus, int]


def as_modulus(p: ModulusLike) -> PrimeModulus:
    return p if isinstance(p, PrimeModulus) else PrimeModulus(p)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ZpFunction:
    """A real-valued function on Z_p, stored as its p values."""

    modulus: PrimeModulus
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float, copy=True).reshape(-1)
        if vals.shape[0] != self.modulus.p:
            raise LengthMismatch(
                f"expected {self.modulus.p} values, got {vals.shape[0]}")
        if not np.all(np.isfinite(vals)):
            raise NonFiniteValue("function values must be finite")
        object.__setattr__(self, "values", _frozen(vals))

    @property
    def p(self) -> int:
        return self.modulus.p

    @classmethod
    def from_values(cls, p: ModulusLike, values) -> "ZpFunction":
        return cls(as_modulus(p), np.asarray(values, dtype=float))

    @classmethod
    def zeros(cls, p: ModulusLike) -> "ZpFunction":
        mod = as_modulus(p)
        return cls(mod, np.zeros(mod.p))

    @classmethod
    def constant(cls, p: ModulusLike, c: float) -> "ZpFunction":
        mod = as_modulus(p)
        return cls(mod, np.full(mod.p, float(c)))

    @classmethod
    def indicator(cls, p: ModulusLike, members: Iterable[int]) -> "ZpFunction":
        mod = as_modulus(p)
        vals = np.zeros(mod.p)
        for n in members:
            vals[int(n) % mod.p] = 1.0
        return cls(mod, vals)

    def __call__(self, n: int) -> float:
        return float(self.values[int(n) % self.p])

    def __len__(self):
        return self.p

    def l1_norm(self) -> float:
        return float(np.abs(self.values).sum())


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Complex Fourier coefficients indexed by the places 0..p-1."""

    modulus: PrimeModulus
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex, copy=True).reshape(-1)
        if c.shape[0] != self.modulus.p:
            raise LengthMismatch(
                f"expected {self.modulus.p} coefficients, got {c.shape[0]}")
        if not np.all(np.isfinite(c)):
            raise NonFiniteValue("coefficients must be finite")
        object.__setattr__(self, "coeffs", _frozen(c))

    @property
    def p(self) -> int:
        return self.modulus.p

    def __getitem__(self, a: int) -> complex:
        return complex(self.coeffs[int(a) % self.p])

    def symmetry_defect(self) -> float:
        """max_a |F(a) - conj(F(-a))|, zero for the transform of a real function."""
        c = self.coeffs
        mirrored = np.conj(c[(-np.arange(self.p)) % self.p])
        return float(np.max(np.abs(c - mirrored)))

    def support(self, tol: float = 0.0) -> list[int]:
        return [int(a) for a in np.flatnonzero(np.abs(self.coeffs) > tol)]


@dataclass(frozen=True)
class SupportSet:
    """The set of indices where a [0,1]-valued function is strictly positive."""

    modulus: PrimeModulus
    members: frozenset

    def __post_init__(self):
        p = self.modulus.p
        mem = frozenset(int(n) for n in self.members)
        bad = [n for n in mem if not 0 <= n < p]
        if bad:
            raise RangeViolation(f"support indices out of range 0..{p - 1}: {sorted(bad)}")
        object.__setattr__(self, "members", mem)

    @classmethod
    def of(cls, p: ModulusLike, members: Iterable[int]) -> "SupportSet":
        return cls(as_modulus(p), frozenset(members))

    @property
    def p(self) -> int:
        return self.modulus.p

    def __contains__(self, n) -> bool:
        return int(n) in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def complement(self) -> "SupportSet":
        return SupportSet(self.modulus, frozenset(range(self.p)) - self.members)

    def indicator(self) -> ZpFunction:
        return ZpFunction.indicator(self.modulus, self.members)

    def signs(self) -> np.ndarray:
        """+1 on members, -1 elsewhere."""
        s = -np.ones(self.p)
        s[sorted(self.members)] = 1.0
        return s


@dataclass(frozen=True)
class PlaceSet:
    """Distinguished places as given, plus their reduction into 1..(p-1)/2."""

    modulus: PrimeModulus
    raw: tuple
    reduced: tuple

    @property
    def k(self) -> int:
        return len(self.raw)

    @property
    def t(self) -> int:
        return len(self.reduced)

    def closure(self) -> frozenset:
        """{0} together with every raw place and its negative, mod p."""
        p = self.modulus.p
        out = {0}
        for a in self.raw:
            out.add(a % p)
            out.add((-a) % p)
        return frozenset(out)


def _check_same(*objs):
    mods = {o.modulus.p for o in objs}
    if len(mods) > 1:
        raise ModulusMismatch(f"operands live on different moduli: {sorted(mods)}")


@lru_cache(maxsize=32)
def _kernel(p: int, sign: int) -> np.ndarray:
    idx = np.arange(p)
    return _frozen(np.exp(sign * 2j * np.pi * (np.outer(idx, idx) % p) / p))


def dft(f: ZpFunction) -> Spectrum:
    p = f.p
    return Spectrum(f.modulus, _kernel(p, 1) @ f.values)


def idft(F: Spectrum, tol: float = DEFAULT_TOL_DFT, check_symmetry: bool = True) -> ZpFunction:
    """Inverse transform, returning the real part.

    Unless ``check_symmetry`` is off, the spectrum must be conjugate
    symmetric up to ``tol * max|F|``, so the discarded imaginary part is
    roundoff.
    """
    p = F.p
    scale = float(np.max(np.abs(F.coeffs)))
    if check_symmetry and F.symmetry_defect() > tol * scale:
        raise SymmetryViolation(
            f"spectrum is not conjugate symmetric (defect {F.symmetry_defect():.3e})")
    return ZpFunction(F.modulus, (_kernel(p, -1) @ F.coeffs).real / p)


def convolve(f: ZpFunction, g: ZpFunction) -> ZpFunction:
    """(f*g)(n) = sum_a f(a) g(n-a), summed directly."""
    _check_same(f, g)
    p = f.p
    idx = np.arange(p)
    shifted = g.values[(idx[:, None] - idx[None, :]) % p]
    return ZpFunction(f.modulus, shifted @ f.values)


def reduce_places(raw: Sequence[int], p: ModulusLike) -> PlaceSet:
    """Fold each place a onto min(a, -a) mod p, sort and deduplicate."""
    mod = as_modulus(p)
    raw = tuple(int(a) for a in raw)
    zeros = [a for a in raw if a % mod.p == 0]
    if zeros:
        raise ZeroPlace(f"places must be nonzero mod {mod.p}: {zeros}")
    if raw and mod.p == 2:
        raise PlaceError("p = 2 admits no places in 1..(p-1)/2")
    reduced = sorted({min(a % mod.p, mod.p - a % mod.p) for a in raw})
    return PlaceSet(mod, raw, tuple(reduced))


def positive_support(f: ZpFunction, threshold: float = 0.0) -> SupportSet:
    """{n : f(n) > threshold}, with no range check on f."""
    return SupportSet(f.modulus, frozenset(int(n) for n in np.flatnonzero(f.values > threshold)))


def support_of(g: ZpFunction) -> SupportSet:
    vals = g.values
    bad = np.flatnonzero((vals < 0.0) | (vals > 1.0))
    if bad.size:
        raise RangeViolation(f"g must take values in [0,1]; violated at {bad.tolist()}")
    return SupportSet(g.modulus, frozenset(int(n) for n in np.flatnonzero(vals > 0.0)))
