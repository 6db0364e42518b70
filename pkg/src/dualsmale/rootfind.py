"""All complex roots of a polynomial, plus a brute-force oracle for small degrees.

The main solver is the Aberth-Ehrlich simultaneous iteration started from a
rotated circle of Cauchy radius, followed by damped Newton polishing.  Runs
are deterministic: no randomness enters the initial guesses.

Roots with multiplicity come out of any simultaneous iteration as a small
cluster whose spread is of order ``eps**(1/m)``.  Clusters whose lower Taylor
coefficients at the centroid vanish to working precision are collapsed onto
one Newton-polished point; see :func:`_merge_clusters`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, pi, sqrt

import numpy as np

from . import _kernels as K
from .errors import DegreeTooHigh, DegreeTooSmall, DerivativeVanished, NoConvergence
from .polycore import Polynomial, derivative, taylor_shift

EPS = np.finfo(float).eps
# irrational offset so no guess lands on an axis of symmetry
ANGLE_OFFSET = (sqrt(5) - 1) / 2 * pi / 3


@dataclass(frozen=True)
class ToleranceConfig:
    residual_tol: float = 1e-10
    max_iters: int = 200
    cluster_tol: float = 1e-8
    # initial linking radius (relative to max(1, |z|)) for multiple-root clusters
    merge_radius: float = 0.2
    polish_steps: int = 5

    def __post_init__(self):
        for name in ("residual_tol", "max_iters", "cluster_tol", "merge_radius"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.polish_steps < 0:
            raise ValueError("polish_steps must be nonnegative")

    def tightened(self, factor: float = 1e-3) -> "ToleranceConfig":
        return ToleranceConfig(
            residual_tol=max(self.residual_tol * factor, 4 * EPS),
            max_iters=self.max_iters * 4,
            cluster_tol=self.cluster_tol,
            merge_radius=self.merge_radius,
            polish_steps=max(self.polish_steps, 10),
        )


DEFAULT_TOL = ToleranceConfig()


def residual(p: Polynomial, z: complex) -> float:
    """``|p(z)|`` relative to ``max_j |c_j| max(1, |z|)**j``.

    Inside the unit disk this is ``|p(z)| / max|c_j|``; outside it the scale
    grows with the size of the terms so the figure stays attainable in
    double precision.
    """
    c = np.ascontiguousarray(p.coeffs)
    return abs(K.horner(c, complex(z))) / K.term_scale(c, complex(z))


@dataclass(frozen=True, eq=False)
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray
    iterations: int
    converged: bool

    def __len__(self):
        return len(self.roots)

    def to_dict(self) -> dict:
        return {
            "roots": [[float(z.real), float(z.imag)] for z in self.roots],
            "residuals": [float(r) for r in self.residuals],
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
        }


def cauchy_radius(c: np.ndarray) -> float:
    return 1.0 + float(np.max(np.abs(c[:-1] / c[-1])))


def _quadratic(c0: complex, c1: complex, c2: complex) -> list[complex]:
    disc = np.sqrt(complex(c1 * c1 - 4 * c2 * c0))
    # pick the sign that avoids cancellation
    if abs(c1 + disc) >= abs(c1 - disc):
        q = -(c1 + disc) / 2
    else:
        q = -(c1 - disc) / 2
    if q == 0:
        return [-c1 / (2 * c2)] * 2
    return [q / c2, c0 / q]


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    n = len(c) - 1
    ang = 2 * pi * np.arange(n) / n + ANGLE_OFFSET
    return cauchy_radius(c) * np.exp(1j * ang)


def find_roots(p: Polynomial, cfg: ToleranceConfig = DEFAULT_TOL, strict: bool = True) -> RootSet:
    """Roots of ``p`` with multiplicity.

    With ``strict`` a missed residual tolerance raises :class:`NoConvergence`
    (carrying the RootSet); otherwise the RootSet comes back with
    ``converged=False``.
    """
    c = np.ascontiguousarray(p.coeffs, dtype=np.complex128)
    n = len(c) - 1
    if n < 1:
        raise DegreeTooSmall("need degree >= 1 to find roots")
    # exact zero roots
    n_zero = 0
    while c[n_zero] == 0:
        n_zero += 1
    core = c[n_zero:]
    m = len(core) - 1
    iterations = 0
    if m == 0:
        z = np.zeros(0, dtype=np.complex128)
    elif m == 1:
        z = np.array([-core[0] / core[1]], dtype=np.complex128)
    elif m == 2:
        z = np.array(_quadratic(complex(core[0]), complex(core[1]), complex(core[2])), dtype=np.complex128)
    else:
        z = _initial_guesses(core)
        iterations = K.aberth(core, z, cfg.max_iters, cfg.residual_tol)
    roots = np.concatenate([np.zeros(n_zero, dtype=np.complex128), z])

    if cfg.polish_steps and m >= 1:
        dc = np.ascontiguousarray(derivative(p).coeffs)
        K.newton_polish(c, dc, roots, cfg.polish_steps)
    if n >= 2:
        roots = _merge_clusters(p, roots, cfg)
    residuals = K.residuals(c, roots)
    converged = bool(np.all(residuals <= cfg.residual_tol))
    rs = RootSet(roots=roots, residuals=residuals, iterations=iterations, converged=converged)
    if strict and not converged:
        raise NoConvergence(
            f"residual {residuals.max():.3g} above {cfg.residual_tol:g} after {iterations} sweeps", rs
        )
    return rs


def _components(link: np.ndarray) -> list[list[int]]:
    n = len(link)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in np.nonzero(link[i])[0]:
                if not seen[j]:
                    seen[j] = True
                    stack.append(int(j))
        comps.append(sorted(comp))
    return comps


def _deriv_coeffs(c: np.ndarray, order: int) -> np.ndarray:
    for _ in range(order):
        c = c[1:] * np.arange(1, len(c))
    return np.ascontiguousarray(c)


def _polish_multiple(p: Polynomial, z0: complex, m: int, steps: int = 30) -> complex:
    """Newton on the (m-1)-th derivative, where an m-fold root of p is simple."""
    fc = _deriv_coeffs(np.asarray(p.coeffs), m - 1)
    dfc = _deriv_coeffs(fc, 1)
    z = complex(z0)
    for _ in range(steps):
        d = K.horner(dfc, z)
        if d == 0:
            break
        step = K.horner(fc, z) / d
        z -= step
        if abs(step) <= 4 * EPS * max(1.0, abs(z)):
            break
    return z


def is_numerical_multiple_root(p: Polynomial, z: complex, m: int, slack: float | None = None) -> bool:
    """True if the Taylor coefficients of order < m at z vanish to working precision."""
    n = p.degree
    slack = 8.0 * (n + 1) if slack is None else slack
    c = np.ascontiguousarray(p.coeffs)
    r = abs(z)
    absc = np.abs(c)
    # cheap order-0 test first
    if abs(K.horner(c, z)) > slack * EPS * float(np.sum(absc * r ** np.arange(n + 1))):
        return False
    t = taylor_shift(p, z)
    for j in range(m):
        bound = sum(comb(i, j) * absc[i] * r ** (i - j) for i in range(j, n + 1))
        if abs(t[j]) > slack * EPS * bound:
            return False
    return True


MIN_MERGE_RADIUS = 1e-6
# loose order-0 gate on a cluster centroid before the costly polish
CENTROID_SLACK = 1e6


def _split_radius(dist: np.ndarray) -> float:
    """Largest minimum-spanning-tree edge: single linkage splits below it."""
    n = len(dist)
    best = dist[0].copy()
    best[0] = -1.0
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    longest = 0.0
    for _ in range(n - 1):
        j = int(np.argmin(np.where(in_tree, np.inf, best)))
        longest = max(longest, float(best[j]))
        in_tree[j] = True
        best = np.minimum(best, dist[j])
    return longest


def _merge_clusters(p: Polynomial, roots: np.ndarray, cfg: ToleranceConfig) -> np.ndarray:
    """Collapse clusters that are a multiple root to working precision.

    Candidates are single-linkage components at ``merge_radius``; a component
    failing the Taylor test is re-split at half the radius, so a genuine
    multiple root next to an unrelated close root is still found.
    """
    mag = np.maximum(1.0, np.abs(roots))
    dist = np.abs(roots[:, None] - roots[None, :]) / np.maximum(mag[:, None], mag[None, :])
    np.fill_diagonal(dist, np.inf)
    if dist.min() > cfg.merge_radius:
        return roots
    roots = roots.copy()
    c = np.ascontiguousarray(p.coeffs)
    absc = np.abs(c)
    powers = np.arange(len(c))
    gate = CENTROID_SLACK * 8.0 * len(c) * EPS
    pending = [(list(range(len(roots))), cfg.merge_radius)]
    while pending:
        members, radius = pending.pop()
        sub = dist[np.ix_(members, members)] <= radius
        for comp in _components(sub):
            if len(comp) < 2:
                continue
            idx = [members[i] for i in comp]
            m = len(idx)
            centre = complex(np.mean(roots[idx]))
            # a smeared multiple root has its centroid at noise level; distinct roots do not
            near = abs(K.horner(c, centre)) <= gate * float(np.sum(absc * abs(centre) ** powers))
            if near:
                centre = _polish_multiple(p, centre, m)
            if near and is_numerical_multiple_root(p, centre, m):
                roots[idx] = centre
            else:
                # halve until the component actually splits
                split = _split_radius(dist[np.ix_(idx, idx)])
                r = radius / 2
                while r >= split and r >= MIN_MERGE_RADIUS:
                    r /= 2
                if r >= MIN_MERGE_RADIUS:
                    pending.append((idx, r))
    return roots


def refine_root(p: Polynomial, z0: complex, cfg: ToleranceConfig = DEFAULT_TOL, max_steps: int = 50) -> complex:
    """Plain Newton from z0 until the scaled residual is within tolerance."""
    c = np.ascontiguousarray(p.coeffs)
    dc = np.ascontiguousarray(derivative(p).coeffs)
    scale = p.scale
    z = complex(z0)
    for _ in range(max_steps):
        val = K.horner(c, z)
        if abs(val) <= cfg.residual_tol * K.term_scale(c, z):
            break
        d = K.horner(dc, z)
        if abs(d) <= 1e3 * np.finfo(float).tiny * scale or d == 0:
            raise DerivativeVanished(f"derivative vanished at {z}")
        z -= val / d
    return z


# -- brute-force oracle ----------------------------------------------------

ORACLE_MAX_DEGREE = 6
_GRID = 401  # step 2R/400 = R/200


def _grid_minima(c: np.ndarray) -> np.ndarray:
    R = cauchy_radius(c)
    axis = np.linspace(-R, R, _GRID)
    Z = axis[None, :] + 1j * axis[:, None]
    V = np.abs(np.polyval(c[::-1], Z))
    core = V[1:-1, 1:-1]
    is_min = np.ones_like(core, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            is_min &= core <= V[1 + di : _GRID - 1 + di, 1 + dj : _GRID - 1 + dj]
    ii, jj = np.nonzero(is_min)
    order = np.argsort(core[ii, jj])
    return Z[1:-1, 1:-1][ii[order], jj[order]]


def _newton(c: np.ndarray, dc: np.ndarray, z: complex, steps: int = 100) -> complex:
    for _ in range(steps):
        d = K.horner(dc, z)
        if d == 0:
            break
        step = K.horner(c, z) / d
        z -= step
        if abs(step) <= 2 * EPS * max(1.0, abs(z)):
            break
    return z


def _deflate(c: np.ndarray, r: complex) -> tuple[np.ndarray, complex]:
    """Synthetic division by (z - r): quotient coefficients and remainder."""
    n = len(c) - 1
    q = np.empty(n, dtype=np.complex128)
    acc = c[n]
    for j in range(n - 1, -1, -1):
        q[j] = acc
        acc = acc * r + c[j]
    return q, acc


def oracle_roots(p: Polynomial, cfg: ToleranceConfig = DEFAULT_TOL) -> RootSet:
    """Grid-scan root oracle for degree <= 6, independent of the Aberth path.

    Local minima of |p| on a grid over the Cauchy disk are refined by Newton,
    deduplicated, and assigned multiplicity by repeated deflation.  Roots the
    scan misses are recovered by rescanning the deflated remainder.
    """
    n = p.degree
    if n < 1:
        raise DegreeTooSmall("need degree >= 1")
    if n > ORACLE_MAX_DEGREE:
        raise DegreeTooHigh(f"oracle handles degree <= {ORACLE_MAX_DEGREE}, got {n}")
    c = np.ascontiguousarray(p.coeffs)
    dc = np.ascontiguousarray(derivative(p).coeffs)
    found: list[complex] = []
    mult: list[int] = []
    remainder = c.copy()
    passes = 0
    while sum(mult) < n and passes < n + 2:
        passes += 1
        rdc = remainder[1:] * np.arange(1, len(remainder))
        for cand in _grid_minima(remainder):
            if sum(mult) >= n:
                break
            z = _newton(remainder, rdc, complex(cand))
            z = _newton(c, dc, z)
            if abs(K.horner(c, z)) > cfg.residual_tol * K.term_scale(c, z):
                continue
            dup = [i for i, r in enumerate(found) if abs(r - z) <= 1e-6 * max(1.0, abs(r))]
            if dup:
                if passes > 1:
                    mult[dup[0]] += 1
                continue
            m = 1
            while True:
                m_new = min(_multiplicity(c, z), n - sum(mult))
                if m_new <= m:
                    break
                m = m_new
                z = _polish_multiple(p, z, m)
            found.append(z)
            mult.append(m)
        if sum(mult) < n:
            remainder = c.copy()
            for r, m in zip(found, mult):
                for _ in range(m):
                    remainder, _rem = _deflate(remainder, r)
            if len(remainder) < 2:
                break
    roots = np.array([r for r, m in zip(found, mult) for _ in range(m)], dtype=np.complex128)
    residuals = K.residuals(c, roots) if len(roots) else np.zeros(0)
    converged = len(roots) == n and bool(np.all(residuals <= cfg.residual_tol))
    return RootSet(roots=roots, residuals=residuals, iterations=passes, converged=converged)


def _multiplicity(c: np.ndarray, r: complex, thr: float = 1e-6) -> int:
    q = c
    m = 0
    while len(q) > 1:
        quotient, rem = _deflate(q, r)
        if m > 0:
            bound = float(np.sum(np.abs(q) * abs(r) ** np.arange(len(q))))
            if abs(rem) > thr * bound:
                break
        m += 1
        q = quotient
    return m
