"""Numerical laboratory for Smale's mean value conjecture and its dual."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CriticalBasepoint,
    DegreeMismatch,
    DegreeTooHigh,
    DegreeTooSmall,
    DerivativeVanished,
    DualSmaleError,
    GuaranteeViolated,
    NoConvergence,
    NonzeroConstantTerm,
    NotNormalized,
    NotSymmetric,
)
from .oddcert import OddCertificate, certify_odd, certify_symmetric, detect_symmetry, sqrt_margin_check  # noqa: E402
from .polycore import (  # noqa: E402
    NormalizedPolynomial,
    Polynomial,
    build_H,
    build_R,
    decompose_symmetric,
    derivative,
    evaluate,
    normalize_at,
    ratio_poly,
)
from .ratios import (  # noqa: E402
    BoundPair,
    CheckOutcome,
    RatioReport,
    Status,
    check_dual_bound,
    check_smale_upper,
    critical_points,
    dual_lower_bounds,
    is_conservative,
    ratio_report,
)
from .rootfind import RootSet, ToleranceConfig, find_roots, oracle_roots, refine_root  # noqa: E402
from .search import SearchConfig, SearchResult, counterexample_scan, minimize_dual_ratio, objective, parameterize  # noqa: E402
