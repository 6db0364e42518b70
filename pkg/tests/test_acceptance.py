"""Acceptance criteria, each run at its stated tolerance.

Every test appends one ``PASS``/``FAIL`` line to ``ACCEPTANCE_LINES``; the
lines are printed in the terminal summary.  Runtime budgets are asserted
alongside the numerical criteria.
"""

import itertools
import time
from math import comb, sqrt

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from dualsmale.checks import match_multiset, rel_close
from dualsmale.oddcert import certify_odd, certify_symmetric
from dualsmale.polycore import NormalizedPolynomial, Polynomial, derivative, ratio_poly
from dualsmale.ratios import Status, check_dual_bound, is_conservative, ratio_report
from dualsmale.reports import canonical_json
from dualsmale.rootfind import find_roots, oracle_roots, residual
from dualsmale.sampling import random_normalized, random_odd, random_symmetric
from dualsmale.search import SearchConfig, counterexample_scan, minimize_dual_ratio

SEED = 20261017


def record(number, title, ok, detail, elapsed, budget):
    in_time = elapsed <= budget
    verdict = "PASS" if ok and in_time else "FAIL"
    ACCEPTANCE_LINES.append(f"[{verdict}] {number}. {title}: {detail} ({elapsed:.1f}s / {budget:.0f}s)")
    assert ok, detail
    assert in_time, f"took {elapsed:.1f}s, budget {budget:.0f}s"


def verified_ratio(p, c):
    """|P(c)/c| and the scaled residual of P' at c, recomputed from coefficients."""
    return abs(ratio_poly(p)(c)), residual(derivative(p), c)


def test_criterion_1_odd_floor():
    rng = np.random.default_rng(SEED + 1)
    t0 = time.perf_counter()
    worst_margin, worst_res, n = np.inf, 0.0, 0
    for d in range(3, 16, 2):
        for _ in range(500):
            p = random_odd(rng, d)
            cert = certify_odd(p)
            value, res = verified_ratio(p, cert.c)
            worst_margin = min(worst_margin, value - 1.0 / d)
            worst_res = max(worst_res, res)
            n += 1
    elapsed = time.perf_counter() - t0
    ok = worst_margin >= -1e-9 and worst_res <= 1e-8
    detail = f"{n} odd certificates, min(|P(c)/c| - 1/d) = {worst_margin:.3e}, max residual P'(c) = {worst_res:.2e}"
    record(1, "odd floor 1/d", ok, detail, elapsed, 120)


def test_criterion_2_symmetric_floor():
    rng = np.random.default_rng(SEED + 2)
    plan = {2: (3, 5, 7), 3: (4, 7, 10), 4: (5, 9, 13)}
    t0 = time.perf_counter()
    worst, n = np.inf, 0
    for k, degrees in plan.items():
        for d in degrees:
            for _ in range(200):
                p = random_symmetric(rng, d, k)
                cert = certify_symmetric(p, k)
                value, _ = verified_ratio(p, cert.c)
                worst = min(worst, value - d ** (-2.0 / k))
                n += 1
    elapsed = time.perf_counter() - t0
    record(2, "k-fold floor d^(-2/k)", worst >= -1e-9, f"{n} certificates, min margin = {worst:.3e}", elapsed, 60)


def test_criterion_3_universal_floor():
    rng = np.random.default_rng(SEED + 3)
    t0 = time.perf_counter()
    worst, anomalies, n = np.inf, 0, 0
    for d in range(2, 11):
        for _ in range(500):
            rep = ratio_report(random_normalized(rng, d))
            worst = min(worst, rep.dual_ratio - 1.0 / d**2)
            anomalies += check_dual_bound(rep)["dubinin_square"].status is Status.NUMERICAL_ANOMALY
            n += 1
    elapsed = time.perf_counter() - t0
    ok = worst >= -1e-9 and anomalies == 0
    record(3, "universal floor 1/n^2", ok, f"{n} samples, min margin = {worst:.3e}, anomalies = {anomalies}", elapsed, 120)


def test_criterion_4_sharp_families():
    t0 = time.perf_counter()
    err_binom, err_mono, conservative = 0.0, 0.0, True
    for n in range(2, 11):
        p = NormalizedPolynomial([0] + [comb(n, j) / n for j in range(1, n + 1)])
        err_binom = max(err_binom, abs(ratio_report(p).dual_ratio - 1.0 / n))
        c = np.zeros(n + 1, dtype=complex)
        c[1], c[n] = 1, 1.0 / n
        rep = ratio_report(NormalizedPolynomial(c))
        target = 1 - 1.0 / n
        err_mono = max(err_mono, abs(rep.smale_ratio - target), abs(rep.dual_ratio - target))
        conservative &= is_conservative(rep)
    elapsed = time.perf_counter() - t0
    ok = err_binom <= 1e-10 and err_mono <= 1e-10 and conservative
    detail = f"max |D - 1/n| = {err_binom:.2e}, max |S,D - (1-1/d)| = {err_mono:.2e}, conservative = {conservative}"
    record(4, "sharp families", ok, detail, elapsed, 10)


def test_criterion_5_odd_cubic():
    rng = np.random.default_rng(SEED + 5)
    t0 = time.perf_counter()
    err_d, err_q = 0.0, 0.0
    for _ in range(100):
        a = complex(*rng.uniform(-3, 3, 2))
        p = NormalizedPolynomial([0, 1, 0, a])
        err_d = max(err_d, abs(ratio_report(p).dual_ratio - 2 / 3))
        cert = certify_odd(p)
        err_q = max(err_q, abs(cert.q_abs - 2 / 3))
    elapsed = time.perf_counter() - t0
    ok = err_d <= 1e-10 and err_q <= 1e-10
    record(5, "odd cubic 2/3", ok, f"max |D - 2/3| = {err_d:.2e}, max |q_abs - 2/3| = {err_q:.2e}", elapsed, 10)


def bottleneck(a, b):
    return min(np.max(np.abs(a - b[list(perm)])) for perm in itertools.permutations(range(len(b))))


def test_criterion_6_oracle_equivalence():
    rng = np.random.default_rng(SEED + 6)
    t0 = time.perf_counter()
    worst_dist, worst_vieta = 0.0, 0.0
    for i in range(200):
        d = 1 + i % 6
        p = Polynomial(rng.uniform(0, 1, d + 1) + 1j * rng.uniform(0, 1, d + 1))
        roots = find_roots(p).roots
        worst_dist = max(worst_dist, bottleneck(roots, oracle_roots(p).roots))
        c = p.coeffs
        s, prod = -c[-2] / c[-1], (-1) ** d * c[0] / c[-1]
        worst_vieta = max(
            worst_vieta,
            abs(np.sum(roots) - s) / max(1.0, abs(s)),
            abs(np.prod(roots) - prod) / max(1.0, abs(prod)),
        )
    elapsed = time.perf_counter() - t0
    ok = worst_dist <= 1e-7 and worst_vieta <= 1e-8
    record(6, "root finder vs oracle", ok, f"max matched distance = {worst_dist:.2e}, max Vieta error = {worst_vieta:.2e}", elapsed, 60)


@pytest.mark.slow
def test_criterion_7_search():
    t0 = time.perf_counter()
    general = minimize_dual_ratio(SearchConfig(degree=3, restarts=64, seed=SEED))
    odd = minimize_dual_ratio(SearchConfig(degree=3, poly_class="odd", seed=SEED))
    flagged = {}
    for d in range(3, 16, 2):
        flags = counterexample_scan(SearchConfig(degree=d, poly_class="odd", seed=SEED + d))
        if flags:
            flagged[f"odd:{d}"] = len(flags)
    for d in range(2, 8):
        flags = counterexample_scan(SearchConfig(degree=d, seed=SEED + 100 + d))
        if flags:
            flagged[f"general:{d}"] = len(flags)
    elapsed = time.perf_counter() - t0
    ok = (
        1 / 3 - 1e-6 <= general.best_D <= 1 / 3 + 0.01
        and abs(odd.best_D - 2 / 3) <= 1e-9
        and not flagged
    )
    detail = f"general d=3 best_D = {general.best_D!r}, odd d=3 best_D = {odd.best_D!r}, flagged = {flagged or 'none'}"
    record(7, "search convergence", ok, detail, elapsed, 300)


def test_criterion_8_properties():
    rng = np.random.default_rng(SEED + 8)
    t0 = time.perf_counter()
    pairing = rotation = branches = True
    for d in (3, 5, 7, 9, 11, 13, 15):
        for _ in range(20):
            p = random_odd(rng, d)
            rep = ratio_report(p)
            pairing &= match_multiset(rep.critical_points, -rep.critical_points, 1e-8)
            pairing &= match_multiset(rep.ratios, ratio_poly(p)(-rep.critical_points), 1e-8)
    for d in range(2, 9):
        for _ in range(20):
            p = random_normalized(rng, d)
            theta = rng.uniform(0, 2 * np.pi)
            rot = np.exp(1j * theta)
            # e^{-i t} P(e^{i t} z) stays normalized and has the same ratio moduli
            q = NormalizedPolynomial.snap(Polynomial(p.coeffs * rot ** np.arange(d + 1) / rot))
            a = np.sort(ratio_report(p).moduli)
            b = np.sort(ratio_report(q).moduli)
            rotation &= bool(np.all(np.abs(a - b) <= 1e-9 * np.maximum(1.0, a)))
    for k, d in ((2, 7), (3, 10), (4, 13)):
        for _ in range(20):
            p = random_symmetric(rng, d, k)
            cert = certify_symmetric(p, k)
            r = ratio_poly(p)
            for c in cert.branches():
                branches &= rel_close(abs(r(c)), cert.q_abs, 1e-9)
                branches &= residual(derivative(p), c) <= 1e-8
    cfg = SearchConfig(degree=4, restarts=4, max_evals_per_restart=300, seed=SEED)
    det = canonical_json(minimize_dual_ratio(cfg).to_dict()) == canonical_json(minimize_dual_ratio(cfg).to_dict())
    elapsed = time.perf_counter() - t0
    ok = pairing and rotation and branches and det
    detail = f"pairing = {pairing}, rotation = {rotation}, branches = {branches}, determinism = {det}"
    record(8, "property suite", ok, detail, elapsed, 60)
