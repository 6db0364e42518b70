"""Constructive lower-bound certificates for k-fold symmetric polynomials.

A normalized ``P`` with ``P(lambda z) = lambda P(z)`` for a primitive k-th
root of unity ``lambda`` factors as ``P(z) = z Q(z^k)``.  The auxiliary
``H(u) = u Q(u)^k`` has ``H'(u) = Q(u)^(k-1) R(u)`` with
``R(u) = Q(u) + k u Q'(u)``, ``H(0) = 0`` and ``H'(0) = 1``.  Dubinin's
``1/n**2`` inequality applied to ``H`` at the origin yields a critical point
``w`` of ``H`` with ``|H(w)/w| = |Q(w)|**k >= d**-2``; it cannot be a zero
of ``Q``, so ``R(w) = 0``.  Any ``c`` with ``c**k = w`` is then a critical
point of ``P`` with ``P(c)/c = Q(w)``, giving ``|P(c)/c| >= d**(-2/k)``.

The pipeline below follows that argument, taking the root of ``R`` that
maximizes ``|Q|`` as the witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, sqrt

import numpy as np

from .errors import DegreeTooSmall, GuaranteeViolated
from .polycore import (
    REL_TOL,
    Polynomial,
    build_R,
    decompose_symmetric,
    derivative,
    evaluate,
)
from .ratios import as_normalized, ratio_report
from .rootfind import DEFAULT_TOL, ToleranceConfig, find_roots, residual

GUARANTEE_TOL = 1e-9
# |Q(w)| values this close (relatively) count as a tie
TIE_RTOL = 1e-12


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


@dataclass(frozen=True, eq=False)
class OddCertificate:
    k: int
    degree: int
    p: Polynomial
    q: Polynomial
    w: complex
    c: complex
    q_abs: float
    bound: float
    residual_R: float
    residual_Pprime: float

    @property
    def margin(self) -> float:
        return self.q_abs - self.bound

    def branches(self) -> list[complex]:
        """All k-th roots of w, starting from ``c``."""
        lam = np.exp(2j * np.pi / self.k)
        return [self.c * lam**j for j in range(self.k)]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "degree": self.degree,
            "p": self.p.to_dict(),
            "q": self.q.to_dict(),
            "w": _pair(self.w),
            "c": _pair(self.c),
            "q_abs": self.q_abs,
            "bound": self.bound,
            "residual_R": self.residual_R,
            "residual_Pprime": self.residual_Pprime,
        }


@dataclass(frozen=True)
class SqrtMarginReport:
    degree: int
    dual_ratio: float
    sqrt_bound: float
    margin: float

    def to_dict(self) -> dict:
        return {"degree": self.degree, "D": self.dual_ratio, "sqrt_bound": self.sqrt_bound, "margin": self.margin}


def detect_symmetry(p: Polynomial) -> int:
    """Largest k with ``p(z) = z Q(z^k)``; 1 when there is no symmetry."""
    p = as_normalized(p)
    c = p.coeffs
    k = 0
    for j in range(2, len(c)):
        if abs(c[j]) > REL_TOL * p.scale:
            k = gcd(k, j - 1)
    return k if k > 0 else 1


def principal_root(w: complex, k: int) -> complex:
    """k-th root of w with argument in [0, 2*pi/k)."""
    arg = float(np.angle(w)) % (2 * np.pi)
    return abs(w) ** (1.0 / k) * np.exp(1j * arg / k)


def _select_witness(roots: np.ndarray, q: Polynomial) -> int:
    vals = np.abs(evaluate(q, roots))
    top = vals.max()
    ties = [i for i in range(len(roots)) if vals[i] >= top * (1 - TIE_RTOL)]
    return min(ties, key=lambda i: (abs(roots[i]), float(np.angle(roots[i]))))


def certify_symmetric(p: Polynomial, k: int, cfg: ToleranceConfig = DEFAULT_TOL) -> OddCertificate:
    """Certified critical point ``c`` with ``|P(c)/c| >= d**(-2/k)``.

    Raises NotSymmetric/DegreeMismatch if ``p`` is not of the form
    ``z Q(z^k)``, NoConvergence if the roots of ``R`` cannot be found, and
    GuaranteeViolated if the witness misses the bound (numerical failure).
    """
    p = as_normalized(p)
    d = p.degree
    if d < 3:
        raise DegreeTooSmall(f"certificate needs degree >= 3, got {d}")
    if k < 2:
        raise ValueError("symmetry order k must be at least 2")
    q = decompose_symmetric(p, k)
    r = build_R(q, k)
    roots = find_roots(r, cfg).roots
    i = _select_witness(roots, q)
    w = complex(roots[i])
    c = complex(principal_root(w, k))
    cert = OddCertificate(
        k=k,
        degree=d,
        p=p,
        q=q,
        w=w,
        c=c,
        q_abs=float(abs(evaluate(q, w))),
        bound=float(d ** (-2.0 / k)),
        residual_R=residual(r, w),
        residual_Pprime=residual(derivative(p), c),
    )
    if cert.q_abs < cert.bound - GUARANTEE_TOL:
        raise GuaranteeViolated(
            f"|Q(w)| = {cert.q_abs!r} below d^(-2/k) = {cert.bound!r}", cert
        )
    return cert


def certify_odd(p: Polynomial, cfg: ToleranceConfig = DEFAULT_TOL) -> OddCertificate:
    return certify_symmetric(p, 2, cfg)


def sqrt_margin_check(p: Polynomial, cfg: ToleranceConfig = DEFAULT_TOL) -> SqrtMarginReport:
    """Empirical margin ``D(P) - 1/sqrt(d)`` for odd P; the sign is data, not a verdict."""
    p = as_normalized(p)
    decompose_symmetric(p, 2)
    rep = ratio_report(p, cfg)
    b = 1.0 / sqrt(p.degree)
    return SqrtMarginReport(degree=p.degree, dual_ratio=rep.dual_ratio, sqrt_bound=b, margin=rep.dual_ratio - b)
