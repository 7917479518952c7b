"""Exact counting of additive (k+1)-tuples x0 = x1 + ... + xk in Z_p.

Everything arithmetic is exact (Python integers); spectral quantities carry
certified error bounds and escalate precision rather than silently round.
"""

from .core import (
    VERSION,
    AffineMap,
    OrbitCatalog,
    SizeGuardError,
    Subset,
    apply_affine,
    build_orbit_catalog,
    canonical_form,
    is_odd_prime,
    orbit_catalog,
    subset_masks_of_size,
)
from .counting import (
    cyclic_convolve,
    indicator,
    power_sigma,
    s_count,
    s_k_count,
    sigma_vector,
)
from .extremal import (
    EXHAUSTIVE_ORBITS,
    EXHAUSTIVE_RAW,
    INTERVAL_SCAN,
    PointVerdict,
    ResultCache,
    SearchReport,
    TheoremVerdict,
    minimize_s_general,
    minimize_sk,
    scan_k0,
    verify_thm_interval_extremal,
    verify_thm_k1,
    verify_thm_knot1,
)
from .fourier import (
    AngleCheck,
    FourierProfile,
    FValue,
    F_value,
    PrecisionError,
    ProjectionRanking,
    SpectralLevels,
    TGoodScan,
    angle_check_punctured,
    dft_indicator,
    exact_arg_lattice_index,
    interval_secondary_peak,
    optimal_t,
    primary_image,
    projection_scores,
    spectral_levels,
    t_good_scan,
    translate_phase_index,
)
from .pollard import (
    EqualityCase,
    EqualityTag,
    ThresholdProfile,
    check_extremality_conditions,
    classify_equality_k2,
    critical_r0,
    interval_profile,
    optimal_interval_translate,
    pollard_lhs_rhs,
    threshold_profile,
    threshold_set,
)

__version__ = VERSION

__all__ = [
    "VERSION",
    "__version__",
    "AffineMap",
    "AngleCheck",
    "EqualityCase",
    "EqualityTag",
    "EXHAUSTIVE_ORBITS",
    "EXHAUSTIVE_RAW",
    "FValue",
    "F_value",
    "FourierProfile",
    "INTERVAL_SCAN",
    "OrbitCatalog",
    "PointVerdict",
    "PrecisionError",
    "ProjectionRanking",
    "ResultCache",
    "SearchReport",
    "SizeGuardError",
    "SpectralLevels",
    "Subset",
    "TGoodScan",
    "TheoremVerdict",
    "ThresholdProfile",
    "angle_check_punctured",
    "apply_affine",
    "build_orbit_catalog",
    "canonical_form",
    "check_extremality_conditions",
    "classify_equality_k2",
    "critical_r0",
    "cyclic_convolve",
    "dft_indicator",
    "exact_arg_lattice_index",
    "indicator",
    "interval_profile",
    "interval_secondary_peak",
    "is_odd_prime",
    "minimize_s_general",
    "minimize_sk",
    "optimal_interval_translate",
    "optimal_t",
    "orbit_catalog",
    "pollard_lhs_rhs",
    "power_sigma",
    "primary_image",
    "projection_scores",
    "s_count",
    "s_k_count",
    "scan_k0",
    "sigma_vector",
    "spectral_levels",
    "subset_masks_of_size",
    "t_good_scan",
    "threshold_profile",
    "threshold_set",
    "translate_phase_index",
    "verify_thm_interval_extremal",
    "verify_thm_k1",
    "verify_thm_knot1",
]
