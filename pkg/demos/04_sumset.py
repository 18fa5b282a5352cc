"""(f * 1_S)(n) > 0 only for n in S + S, whenever f >= 0 on S and f <= 0 off it.

Run with ``python3 demos/04_sumset.py``.
"""
import numpy as np

from farkas_balance import (
    SolveConfig,
    SupportSet,
    brute_force_sumset,
    convolve,
    demo_minorant,
    positive_support,
    reduce_places,
    run_dichotomy,
)

S = SupportSet.of(5, [1, 2])
print("S+S by pairs:      ", sorted(brute_force_sumset(S, S)))
print("S+S by convolution:", sorted(positive_support(convolve(S.indicator(), S.indicator()))))

p = 31
rng = np.random.default_rng(4)
S = SupportSet.of(p, np.flatnonzero(rng.random(p) < 0.3))
sumset = brute_force_sumset(S, S)
cert = run_dichotomy(S, reduce_places([3], p), SolveConfig(2))
print(f"\nS = {sorted(S)}  (|S+S| = {len(sumset)})")
print("certificate:", cert.variant)
if cert.variant == "vanishing_balanced":
    minor = demo_minorant(S, cert.h)
    print(f"(h * 1_S) > 0 on {len(minor)} points, all inside S+S: {minor.members <= sumset.members}")
