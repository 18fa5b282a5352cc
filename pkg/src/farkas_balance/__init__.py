"""Balanced functions on Z_p with vanishing Fourier coefficients, or
sign separators with small spectral support, as checkable certificates."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .zp import (  # noqa: F401
    PlaceSet,
    PrimeModulus,
    Spectrum,
    SupportSet,
    ZpFunction,
    convolve,
    dft,
    idft,
    positive_support,
    reduce_places,
    support_of,
)
from .geometry import (  # noqa: F401
    GeometryConfig,
    HullOutcome,
    PointMatrix,
    SeparatingNormal,
    SparseCoefficients,
    caratheodory_reduce,
    origin_in_hull,
    separating_normal,
)
from .dichotomy import (  # noqa: F401
    SmallSpectralSupport,
    SolveConfig,
    VanishingBalanced,
    assemble_spectral,
    assemble_vanishing,
    build_sign_matrix,
    run_dichotomy,
)
from .verify import (  # noqa: F401
    VerificationReport,
    brute_force_sumset,
    demo_minorant,
    oracle_branch1,
    verify_certificate,
)
