"""Compiled inner loops for root finding.

All arrays are complex128 coefficient vectors in ascending order.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def horner(c, z):
    acc = c[c.shape[0] - 1]
    for j in range(c.shape[0] - 2, -1, -1):
        acc = acc * z + c[j]
    return acc


@njit(cache=True)
def horner_d(c, z):
    """Value and first derivative at z."""
    n = c.shape[0] - 1
    p = c[n]
    dp = 0j
    for j in range(n - 1, -1, -1):
        dp = dp * z + p
        p = p * z + c[j]
    return p, dp


@njit(cache=True)
def term_scale(c, z):
    """max_j |c_j| * max(1, |z|)**j, the natural size of p near z."""
    r = max(1.0, abs(z))
    best = 0.0
    t = 1.0
    for j in range(c.shape[0]):
        v = abs(c[j]) * t
        if v > best:
            best = v
        t *= r
    return best


@njit(cache=True)
def aberth(c, z, max_iters, tol):
    """Aberth-Ehrlich iteration in place on the guesses ``z``.

    A root stops moving once its scaled residual is within ``tol``.  Returns
    the number of sweeps performed.
    """
    n = z.shape[0]
    active = np.ones(n, dtype=np.bool_)
    it = 0
    while it < max_iters:
        it += 1
        n_active = 0
        for i in range(n):
            if not active[i]:
                continue
            p, dp = horner_d(c, z[i])
            if abs(p) <= tol * term_scale(c, z[i]):
                active[i] = False
                continue
            n_active += 1
            s = 0j
            for j in range(n):
                if j != i:
                    diff = z[i] - z[j]
                    if diff != 0:
                        s += 1.0 / diff
            if dp == 0:
                # nudge off a stationary point
                z[i] = z[i] * (1.0 + 1e-8) + 1e-12
                continue
            ratio = p / dp
            denom = 1.0 - ratio * s
            if denom == 0:
                w = ratio
            else:
                w = ratio / denom
            z[i] = z[i] - w
        if n_active == 0:
            break
    return it


@njit(cache=True)
def newton_polish(c, dc, z, steps):
    """Damped Newton steps on each root; a step is kept only if the residual drops."""
    n = z.shape[0]
    for i in range(n):
        zi = z[i]
        r = abs(horner(c, zi))
        for _ in range(steps):
            if r == 0.0:
                break
            p = horner(c, zi)
            dp = horner(dc, zi)
            if dp == 0:
                break
            step = p / dp
            improved = False
            for _h in range(4):
                cand = zi - step
                rc = abs(horner(c, cand))
                if rc < r:
                    zi = cand
                    r = rc
                    improved = True
                    break
                step = step * 0.5
            if not improved:
                break
        z[i] = zi
    return z


@njit(cache=True)
def residuals(c, z):
    out = np.empty(z.shape[0])
    for i in range(z.shape[0]):
        out[i] = abs(horner(c, z[i])) / term_scale(c, z[i])
    return out


@njit(cache=True)
def eval_many(c, z):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in range(z.shape[0]):
        out[i] = horner(c, z[i])
    return out


@njit(cache=True)
def dual_ratio(c, max_iters, tol, polish_steps, angle_offset):
    """max |P(zeta)/zeta| over roots of P' for P with c[0] = 0, c[1] = 1.

    No multiple-root handling: near a repeated critical point the value is
    accurate only to about eps**(1/m).  Returns -1.0 if the roots of P' miss
    the residual tolerance, so callers can fall back to the careful path.
    """
    n = c.shape[0] - 1
    dc = np.empty(n, dtype=np.complex128)
    for j in range(n):
        dc[j] = (j + 1) * c[j + 1]
    m = n - 1
    z = np.empty(m, dtype=np.complex128)
    if m == 1:
        z[0] = -dc[0] / dc[1]
    elif m == 2:
        disc = np.sqrt(dc[1] * dc[1] - 4 * dc[2] * dc[0])
        q = -(dc[1] + disc) / 2 if abs(dc[1] + disc) >= abs(dc[1] - disc) else -(dc[1] - disc) / 2
        if q == 0:
            z[0] = z[1] = -dc[1] / (2 * dc[2])
        else:
            z[0] = q / dc[2]
            z[1] = dc[0] / q
    else:
        rad = 0.0
        for j in range(m):
            rad = max(rad, abs(dc[j] / dc[m]))
        rad += 1.0
        for i in range(m):
            z[i] = rad * np.exp(1j * (2 * np.pi * i / m + angle_offset))
        aberth(dc, z, max_iters, tol)
    if polish_steps > 0:
        ddc = np.empty(m, dtype=np.complex128)
        for j in range(m):
            ddc[j] = (j + 1) * dc[j + 1]
        newton_polish(dc, ddc, z, polish_steps)
    best = 0.0
    r = c[1:]
    for i in range(m):
        if abs(horner(dc, z[i])) > tol * term_scale(dc, z[i]):
            return -1.0
        v = abs(horner(r, z[i]))
        if v > best:
            best = v
    return best
