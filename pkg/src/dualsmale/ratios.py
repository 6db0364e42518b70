"""Critical points, the ratios ``P(zeta)/zeta``, and the bounds they are checked against.

For a normalized polynomial (``P(0) = 0``, ``P'(0) = 1``) of degree ``n``:

* ``S(P) = min |P(zeta)/zeta|`` over critical points, conjectured ``<= 1 - 1/n``
  and proven ``<= 4``;
* ``D(P) = max |P(zeta)/zeta|``, conjectured ``>= 1/n`` and proven
  ``>= 1/n**2`` (``>= 1/n`` for odd ``P``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import pi, tan

import numpy as np

from . import _kernels as K
from .errors import DegreeTooSmall, NoConvergence
from .polycore import NormalizedPolynomial, Polynomial, derivative, ratio_poly
from .rootfind import DEFAULT_TOL, RootSet, ToleranceConfig, find_roots

# a proven bound missed by more than this is a numerical anomaly
VIOLATION_TOL = 1e-7
SMALE_CONSTANT = 4.0


def as_normalized(p: Polynomial) -> NormalizedPolynomial:
    return p if isinstance(p, NormalizedPolynomial) else NormalizedPolynomial.snap(p)


@dataclass(frozen=True, eq=False)
class RatioReport:
    degree: int
    critical_points: np.ndarray
    ratios: np.ndarray
    smale_ratio: float
    dual_ratio: float
    argmin_index: int
    argmax_index: int
    residuals: np.ndarray = field(repr=False)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.ratios)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "critical_points": [[float(z.real), float(z.imag)] for z in self.critical_points],
            "ratios": [[float(z.real), float(z.imag)] for z in self.ratios],
            "S": float(self.smale_ratio),
            "D": float(self.dual_ratio),
            "argmin_index": self.argmin_index,
            "argmax_index": self.argmax_index,
        }


@dataclass(frozen=True)
class BoundPair:
    tan_bound: float
    square_bound: float


class Status(str, enum.Enum):
    OK = "OK"
    NUMERICAL_ANOMALY = "NUMERICAL_ANOMALY"
    CANDIDATE_COUNTEREXAMPLE = "CANDIDATE_COUNTEREXAMPLE"


@dataclass(frozen=True)
class Comparison:
    name: str
    quantity: str  # "S" or "D"
    value: float
    bound: float
    proven: bool
    upper: bool  # True when the bound is an upper bound on the quantity
    margin: float  # positive when the bound holds
    status: Status

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "quantity": self.quantity,
            "value": self.value,
            "bound": self.bound,
            "proven": self.proven,
            "upper": self.upper,
            "margin": self.margin,
            "status": self.status.value,
        }


@dataclass(frozen=True)
class CheckOutcome:
    comparisons: tuple[Comparison, ...]

    @property
    def status(self) -> Status:
        statuses = {c.status for c in self.comparisons}
        for s in (Status.NUMERICAL_ANOMALY, Status.CANDIDATE_COUNTEREXAMPLE):
            if s in statuses:
                return s
        return Status.OK

    def __getitem__(self, name: str) -> Comparison:
        for c in self.comparisons:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"status": self.status.value, "comparisons": [c.to_dict() for c in self.comparisons]}


def _compare(name, quantity, value, bound, proven, upper, tol=VIOLATION_TOL) -> Comparison:
    margin = bound - value if upper else value - bound
    if margin >= -tol:
        status = Status.OK
    elif proven:
        status = Status.NUMERICAL_ANOMALY
    else:
        status = Status.CANDIDATE_COUNTEREXAMPLE
    return Comparison(name, quantity, float(value), float(bound), proven, upper, float(margin), status)


def critical_points(p: Polynomial, cfg: ToleranceConfig = DEFAULT_TOL) -> RootSet:
    p = as_normalized(p)
    if p.degree < 2:
        raise DegreeTooSmall("critical points need degree >= 2")
    rs = find_roots(derivative(p), cfg)
    # P'(0) = 1, so a critical point at the origin means the solver broke
    if np.any(np.abs(rs.roots) <= cfg.residual_tol):
        raise NoConvergence("critical point at the origin contradicts P'(0) = 1", rs)
    return rs


def ratio_report(p: Polynomial, cfg: ToleranceConfig = DEFAULT_TOL) -> RatioReport:
    p = as_normalized(p)
    rs = critical_points(p, cfg)
    ratios = K.eval_many(np.ascontiguousarray(ratio_poly(p).coeffs), rs.roots)
    mod = np.abs(ratios)
    imin, imax = int(np.argmin(mod)), int(np.argmax(mod))
    return RatioReport(
        degree=p.degree,
        critical_points=rs.roots,
        ratios=ratios,
        smale_ratio=float(mod[imin]),
        dual_ratio=float(mod[imax]),
        argmin_index=imin,
        argmax_index=imax,
        residuals=rs.residuals,
    )


def dual_lower_bounds(n: int) -> BoundPair:
    if n < 2:
        raise DegreeTooSmall(f"bounds need n >= 2, got {n}")
    return BoundPair(tan_bound=tan(pi / (4 * n)) / n, square_bound=1.0 / n**2)


def check_dual_bound(report: RatioReport, odd: bool = False) -> CheckOutcome:
    n = report.degree
    D = report.dual_ratio
    comps = [
        _compare("dubinin_square", "D", D, 1.0 / n**2, proven=True, upper=False),
        _compare("dual_conjecture", "D", D, 1.0 / n, proven=False, upper=False),
    ]
    if odd:
        comps.append(_compare("odd_theorem", "D", D, 1.0 / n, proven=True, upper=False))
    return CheckOutcome(tuple(comps))


def check_smale_upper(report: RatioReport) -> CheckOutcome:
    n = report.degree
    S = report.smale_ratio
    return CheckOutcome(
        (
            _compare("smale_proven", "S", S, SMALE_CONSTANT, proven=True, upper=True),
            _compare("smale_conjecture", "S", S, 1.0 - 1.0 / n, proven=False, upper=True),
        )
    )


def is_conservative(report: RatioReport, tol: float = 1e-9) -> bool:
    """All critical points share one value of ``P(zeta)/zeta`` (up to ``tol``)."""
    r = report.ratios
    spread = float(np.max(np.abs(r[:, None] - r[None, :]))) if len(r) > 1 else 0.0
    return spread <= tol * max(1.0, report.dual_ratio)
