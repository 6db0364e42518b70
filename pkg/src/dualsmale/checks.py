"""Batch property checks shared by the ``verify`` command and the test suite.

Each check takes a normalized polynomial and returns ``(passed, detail)``;
failures of the underlying numerics count as failed checks.
"""

from __future__ import annotations

import numpy as np

from .errors import DualSmaleError
from .oddcert import certify_symmetric
from .polycore import Polynomial, derivative, ratio_poly
from .ratios import SMALE_CONSTANT, ratio_report
from .rootfind import DEFAULT_TOL, ToleranceConfig, residual

BOUND_TOL = 1e-9
PAIRING_TOL = 1e-8
PPRIME_TOL = 1e-8


def rel_close(a, b, tol) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(b))


def match_multiset(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """Greedy nearest matching of two complex multisets within a relative tolerance."""
    if len(a) != len(b):
        return False
    left = list(b)
    for x in a:
        dist = [abs(x - y) for y in left]
        j = int(np.argmin(dist))
        if dist[j] > tol * max(1.0, abs(x)):
            return False
        left.pop(j)
    return True


def universal_floor(p: Polynomial, cfg: ToleranceConfig = DEFAULT_TOL):
    rep = ratio_report(p, cfg)
    return rep.dual_ratio >= 1.0 / rep.degree**2 - BOUND_TOL, {"D": rep.dual_ratio}


def smale_ceiling(p: Polynomial, cfg: ToleranceConfig = DEFAULT_TOL):
    rep = ratio_report(p, cfg)
    return rep.smale_ratio <= SMALE_CONSTANT + BOUND_TOL, {"S": rep.smale_ratio}


def odd_floor(p: Polynomial, cfg: ToleranceConfig = DEFAULT_TOL):
    rep = ratio_report(p, cfg)
    return rep.dual_ratio >= 1.0 / rep.degree - BOUND_TOL, {"D": rep.dual_ratio}


def odd_pairing(p: Polynomial, cfg: ToleranceConfig = DEFAULT_TOL):
    """Critical points of odd P come in +/- pairs carrying equal ratios."""
    rep = ratio_report(p, cfg)
    zs, rs = rep.critical_points, rep.ratios
    ok = match_multiset(zs, -zs, PAIRING_TOL)
    if ok:
        r_neg = ratio_poly(p)(-zs)
        ok = all(rel_close(r_neg[i], rs[i], PAIRING_TOL) for i in range(len(zs)))
    return ok, {}


def certificate_soundness(p: Polynomial, k: int = 2, cfg: ToleranceConfig = DEFAULT_TOL):
    """Re-verify a certificate with evaluate/derivative only."""
    cert = certify_symmetric(p, k, cfg)
    d = p.degree
    value = abs(ratio_poly(p)(cert.c))
    res = residual(derivative(p), cert.c)
    D = ratio_report(p, cfg).dual_ratio
    ok = (
        res <= PPRIME_TOL
        and value >= d ** (-2.0 / k) - BOUND_TOL
        and rel_close(value, cert.q_abs, BOUND_TOL)
        and cert.q_abs <= D + BOUND_TOL * max(1.0, D)
    )
    return ok, {"q_abs": cert.q_abs, "bound": cert.bound, "residual_Pprime": res}


GENERAL_CHECKS = {"universal_floor": universal_floor, "smale_ceiling": smale_ceiling}
ODD_CHECKS = {
    "odd_floor": odd_floor,
    "odd_pairing": odd_pairing,
    "certificate_soundness": certificate_soundness,
}


def run_check(fn, p: Polynomial, cfg: ToleranceConfig = DEFAULT_TOL):
    try:
        return fn(p, cfg=cfg)
    except DualSmaleError as exc:
        return False, {"error": f"{type(exc).__name__}: {exc}"}
