"""Multi-start simplex search for normalized polynomials with small dual ratio.

The objective ``D(P)`` is a maximum of moduli and has kinks wherever the
maximizing critical point switches, which is exactly where minima sit; a
derivative-free simplex method copes with that.  Restart points come from
``numpy.random.SeedSequence(seed).spawn(restarts)`` so each restart owns an
independent stream and serial and parallel runs see identical points.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import mpmath
import numpy as np

from .errors import DegreeMismatch, DualSmaleError
from . import _kernels as K
from .polycore import NormalizedPolynomial, Polynomial
from .ratios import VIOLATION_TOL, ratio_report
from .rootfind import ANGLE_OFFSET, DEFAULT_TOL, ToleranceConfig

log = logging.getLogger(__name__)

PENALTY = 1e6
LEAD_CLAMP = 1e-6
DIAMETER_TOL = 1e-9


def parse_class(spec: str) -> int:
    """``general`` -> 1, ``odd`` -> 2, ``sym:k`` -> k."""
    spec = spec.strip().lower()
    if spec == "general":
        return 1
    if spec == "odd":
        return 2
    if spec.startswith("sym:"):
        k = int(spec[4:])
        if k < 1:
            raise ValueError(f"symmetry order must be positive: {spec}")
        return k
    raise ValueError(f"unknown polynomial class {spec!r}")


def class_name(k: int) -> str:
    return {1: "general", 2: "odd"}.get(k, f"sym:{k}")


@dataclass(frozen=True)
class SearchConfig:
    degree: int
    poly_class: str = "general"
    restarts: int = 64
    max_evals_per_restart: int = 2000
    seed: int = 0
    coefficient_radius: float = 2.0

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError("degree must be at least 2")
        if self.restarts < 1 or self.max_evals_per_restart < 1:
            raise ValueError("restarts and max_evals_per_restart must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.coefficient_radius <= 0:
            raise ValueError("coefficient_radius must be positive")
        k = parse_class(self.poly_class)
        if k > 1 and (self.degree - 1) % k:
            raise DegreeMismatch(f"class {self.poly_class} needs degree = 1 mod {k}, got {self.degree}")

    @property
    def k(self) -> int:
        return parse_class(self.poly_class)

    @property
    def proven_floor(self) -> float:
        d = self.degree
        return d ** (-2.0 / self.k) if self.k > 1 else 1.0 / d**2

    @property
    def conjectured_floor(self) -> float:
        return 1.0 / self.degree


@dataclass(frozen=True)
class ParamSpace:
    """Real parameter vector <-> normalized polynomial of one class.

    Parameters are (re, im) pairs of the free coefficients: ``c_2 .. c_d``
    for the general class, ``q_1 .. q_m`` of ``Q`` in ``P(z) = z Q(z^k)``
    for symmetric classes.  The last free coefficient is clamped away from
    zero so the degree never collapses.
    """

    degree: int
    k: int

    @property
    def n_free(self) -> int:
        return self.degree - 1 if self.k == 1 else (self.degree - 1) // self.k

    @property
    def dim(self) -> int:
        return 2 * self.n_free

    def free_coeffs(self, params: np.ndarray) -> np.ndarray:
        a = np.asarray(params, dtype=float)
        z = a[0::2] + 1j * a[1::2]
        lead = z[-1]
        if abs(lead) < LEAD_CLAMP:
            z[-1] = LEAD_CLAMP if lead == 0 else LEAD_CLAMP * lead / abs(lead)
        return z

    def to_polynomial(self, params: np.ndarray) -> NormalizedPolynomial:
        z = self.free_coeffs(params)
        c = np.zeros(self.degree + 1, dtype=np.complex128)
        c[1] = 1
        if self.k == 1:
            c[2:] = z
        else:
            c[1 + self.k :: self.k] = z
        return NormalizedPolynomial(c)

    def from_polynomial(self, p: Polynomial) -> np.ndarray:
        c = np.zeros(self.degree + 1, dtype=np.complex128)
        c[: len(p.coeffs)] = p.coeffs
        z = c[2:] if self.k == 1 else c[1 + self.k :: self.k]
        out = np.empty(self.dim)
        out[0::2], out[1::2] = z.real, z.imag
        return out


def parameterize(poly_class: str, degree: int) -> ParamSpace:
    k = parse_class(poly_class)
    if k > 1 and (degree - 1) % k:
        raise DegreeMismatch(f"class {poly_class} needs degree = 1 mod {k}, got {degree}")
    if degree < 2:
        raise ValueError("degree must be at least 2")
    return ParamSpace(degree=degree, k=k)


def objective(params: np.ndarray, space: ParamSpace, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """``D(P)`` for the encoded polynomial, or PENALTY if it cannot be computed."""
    try:
        return ratio_report(space.to_polynomial(params), cfg).dual_ratio
    except (DualSmaleError, FloatingPointError, ValueError, ZeroDivisionError):
        return PENALTY


def fast_objective(params: np.ndarray, space: ParamSpace, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """Compiled ``D(P)`` for the simplex inner loop.

    Skips multiple-root handling, so it can be off by about ``eps**(1/m)``
    next to an m-fold critical point; falls back to :func:`objective` when the
    compiled root finder does not converge.
    """
    c = np.ascontiguousarray(space.to_polynomial(params).coeffs)
    val = K.dual_ratio(c, cfg.max_iters, cfg.residual_tol, cfg.polish_steps, ANGLE_OFFSET)
    if not np.isfinite(val):
        return PENALTY
    return val if val >= 0 else objective(params, space, cfg)


def dual_ratio_mp(p: Polynomial, dps: int = 60) -> float:
    """``D(P)`` recomputed in extended precision as an independent check."""
    with mpmath.workdps(dps):
        c = [mpmath.mpc(complex(x)) for x in p.coeffs]
        dc = [j * c[j] for j in range(1, len(c))]
        roots = mpmath.polyroots(dc[::-1], maxsteps=400, extraprec=4 * dps, error=False)
        best = mpmath.mpf(0)
        for z in roots:
            best = max(best, abs(mpmath.polyval(c[:0:-1], z)))
        return float(best)


def nelder_mead(
    f: Callable[[np.ndarray], float],
    x0: np.ndarray,
    max_evals: int,
    step: float = 0.25,
    xtol: float = DIAMETER_TOL,
) -> tuple[np.ndarray, float, int]:
    """Simplex descent with reflection 1, expansion 2, contraction 0.5, shrink 0.5.

    Stops after ``max_evals`` evaluations or once the simplex diameter drops
    below ``xtol``.
    """
    n = len(x0)
    sim = np.empty((n + 1, n))
    sim[0] = x0
    for i in range(n):
        sim[i + 1] = x0
        sim[i + 1, i] += step
    fs = np.array([f(x) for x in sim])
    evals = n + 1

    while evals < max_evals:
        order = np.argsort(fs, kind="stable")
        sim, fs = sim[order], fs[order]
        diam = max(np.max(np.abs(sim[1:] - sim[0]), axis=1))
        if diam < xtol:
            break
        centroid = sim[:-1].mean(axis=0)
        xr = centroid + (centroid - sim[-1])
        fr = f(xr)
        evals += 1
        if fr < fs[0]:
            xe = centroid + 2.0 * (centroid - sim[-1])
            fe = f(xe)
            evals += 1
            if fe < fr:
                sim[-1], fs[-1] = xe, fe
            else:
                sim[-1], fs[-1] = xr, fr
        elif fr < fs[-2]:
            sim[-1], fs[-1] = xr, fr
        else:
            if fr < fs[-1]:
                xc = centroid + 0.5 * (xr - centroid)
            else:
                xc = centroid + 0.5 * (sim[-1] - centroid)
            fc = f(xc)
            evals += 1
            if fc < min(fr, fs[-1]):
                sim[-1], fs[-1] = xc, fc
            else:
                for i in range(1, n + 1):
                    sim[i] = sim[0] + 0.5 * (sim[i] - sim[0])
                    fs[i] = f(sim[i])
                evals += n
    i = int(np.argmin(fs))
    return sim[i], float(fs[i]), evals


def _sample_start(rng: np.random.Generator, space: ParamSpace, radius: float) -> np.ndarray:
    m = space.n_free
    z = radius * np.sqrt(rng.uniform(0, 1, m)) * np.exp(2j * np.pi * rng.uniform(0, 1, m))
    out = np.empty(space.dim)
    out[0::2], out[1::2] = z.real, z.imag
    return out


@dataclass
class RestartOutcome:
    index: int
    best_params: np.ndarray
    best_D: float
    evals: int
    flags: list = field(default_factory=list)


class _FloorGuardedObjective:
    """Objective that re-verifies values below the floors before trusting them."""

    def __init__(self, space: ParamSpace, cfg: SearchConfig, tol: ToleranceConfig):
        self.space = space
        self.tol = tol
        self.threshold = max(cfg.proven_floor, cfg.conjectured_floor) - VIOLATION_TOL
        self.proven_floor = cfg.proven_floor
        self.flags: list[dict] = []

    def __call__(self, x: np.ndarray) -> float:
        val = fast_objective(x, self.space, self.tol)
        if val >= self.threshold:
            return val
        p = self.space.to_polynomial(x)
        tight = objective(x, self.space, self.tol.tightened())
        try:
            hi = dual_ratio_mp(p)
        except (ZeroDivisionError, ValueError):
            hi = tight
        log.debug("re-verified value below floor: %r -> %r / %r", val, tight, hi)
        if max(tight, hi) < self.threshold:
            verified = max(tight, hi)
            self.flags.append(
                {
                    "status": "CANDIDATE_COUNTEREXAMPLE",
                    "below_proven_floor": verified < self.proven_floor - VIOLATION_TOL,
                    "D_float": val,
                    "D_verified": verified,
                    "polynomial": p.to_dict(),
                }
            )
            return verified
        return max(hi, tight) if hi < PENALTY else tight


def run_restart(cfg: SearchConfig, index: int, tol: ToleranceConfig = DEFAULT_TOL) -> RestartOutcome:
    space = parameterize(cfg.poly_class, cfg.degree)
    seq = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)[index]
    rng = np.random.default_rng(seq)
    x0 = _sample_start(rng, space, cfg.coefficient_radius)
    f = _FloorGuardedObjective(space, cfg, tol)
    x, fx, evals = nelder_mead(f, x0, cfg.max_evals_per_restart)
    if fx < PENALTY:
        # report the careful value at the simplex optimum
        fx = min(PENALTY, objective(x, space, tol))
    return RestartOutcome(index=index, best_params=x, best_D=fx, evals=evals, flags=f.flags)


@dataclass(frozen=True, eq=False)
class SearchResult:
    config: SearchConfig
    best_poly: NormalizedPolynomial
    best_D: float
    conjectured_floor: float
    proven_floor: float
    evals: int
    per_restart_bests: tuple[float, ...]
    flags: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "best_poly": self.best_poly.to_dict(),
            "best_D": self.best_D,
            "conjectured_floor": self.conjectured_floor,
            "proven_floor": self.proven_floor,
            "evals": self.evals,
            "per_restart_bests": list(self.per_restart_bests),
            "flags": list(self.flags),
        }


def _restart_job(args):
    return run_restart(*args)


def minimize_dual_ratio(cfg: SearchConfig, tol: ToleranceConfig = DEFAULT_TOL, workers: int = 1) -> SearchResult:
    jobs = [(cfg, i, tol) for i in range(cfg.restarts)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_restart_job, jobs))
    else:
        outcomes = [_restart_job(j) for j in jobs]
    best = min(outcomes, key=lambda o: (o.best_D, o.index))
    space = parameterize(cfg.poly_class, cfg.degree)
    return SearchResult(
        config=cfg,
        best_poly=space.to_polynomial(best.best_params),
        best_D=best.best_D,
        conjectured_floor=cfg.conjectured_floor,
        proven_floor=cfg.proven_floor,
        evals=sum(o.evals for o in outcomes),
        per_restart_bests=tuple(o.best_D for o in outcomes),
        flags=tuple(flag for o in outcomes for flag in o.flags),
    )


def counterexample_scan(cfg: SearchConfig, tol: ToleranceConfig = DEFAULT_TOL, workers: int = 1) -> list[dict]:
    """Flagged polynomials from a full search; an empty list is the expected outcome."""
    return list(minimize_dual_ratio(cfg, tol, workers).flags)
