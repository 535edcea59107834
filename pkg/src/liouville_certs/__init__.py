"""Exact-arithmetic certificates for approximation sequences to products
and sums of algebraic numbers with the factorial-gap decimal constant."""

from .exact_core import (
    Enclosure,
    Inconclusive,
    IntPolynomial,
    RealAlgebraic,
    floor_log10,
    height,
    is_irreducible,
    isolate_real_roots,
    log10_bounds,
    refine,
)
from .transforms import (
    Lemma1Report,
    lemma1_check,
    lemma2_check,
    minpoly_scale,
    minpoly_shift,
    scale_poly,
    separation_lower_bound,
    shift_poly,
)
from .liouville import (
    DEFAULT_K_MAX,
    DigitLiouville,
    TruncationRecord,
    eq2_check,
    growth_check,
    liouville_constant,
    liouville_enclosure,
    s_beta_check,
    truncation,
)
from .certify import (
    ALPHA_PRESETS,
    CertificateRecord,
    ExponentEstimate,
    alpha_preset,
    certify_chain,
    corollary_decompose,
    f_constant,
    final_bound_check,
    gamma,
    key_index,
    schmidt_probe,
    wstar_upper,
)
from .oracle import (
    EnumerationSpec,
    TargetSource,
    best_approximant,
    enumerate_algebraics,
    exception_scan,
    exponent_scan,
    lemma2_exhaustive,
    liouville_target,
)

__version__ = "0.1.0"
