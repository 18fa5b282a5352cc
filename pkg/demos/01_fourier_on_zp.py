"""Fourier analysis on Z_p with the e^{+2 pi i a n/p} kernel.

Run with ``python3 demos/01_fourier_on_zp.py``.
"""
import numpy as np

from farkas_balance import ZpFunction, convolve, dft, idft

p = 7

# A single point at 0 has a flat spectrum.
delta = ZpFunction.indicator(p, [0])
print("delta_0:", np.round(dft(delta).coeffs, 3))

# The quadratic residues mod 7 form a set whose nonzero coefficients all share one modulus.
qr = ZpFunction.indicator(p, [1, 2, 4])
F = dft(qr).coeffs
print("|QR^(a)| for a = 0..6:", np.round(np.abs(F), 6))

# Real functions have conjugate-symmetric spectra, so F(-a) = conj F(a).
rng = np.random.default_rng(0)
f = ZpFunction.from_values(p, rng.random(p))
Ff = dft(f).coeffs
print("symmetry defect:", np.max(np.abs(Ff[1:] - np.conj(Ff[1:][::-1]))))

# The inverse recovers f, and convolution becomes pointwise multiplication.
print("roundtrip error:", np.max(np.abs(idft(dft(f)).values - f.values)))
g = ZpFunction.from_values(p, rng.random(p))
lhs = dft(convolve(f, g)).coeffs
print("convolution theorem error:", np.max(np.abs(lhs - Ff * dft(g).coeffs)))
