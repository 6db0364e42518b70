from math import comb, pi, sqrt

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from dualsmale.errors import DegreeTooSmall, NotNormalized
from dualsmale.polycore import NormalizedPolynomial, Polynomial, derivative, evaluate, ratio_poly
from dualsmale.ratios import (
    Status,
    check_dual_bound,
    check_smale_upper,
    critical_points,
    dual_lower_bounds,
    is_conservative,
    ratio_report,
)
from dualsmale.sampling import random_normalized, random_odd

from conftest import complexes


def sharp(n):
    """((1 + z)^n - 1) / n, the single-critical-point extremal family."""
    return NormalizedPolynomial([0] + [comb(n, j) / n for j in range(1, n + 1)])


def monomial_family(d):
    """z + z^d / d, a conservative polynomial."""
    c = [0, 1] + [0] * (d - 2) + [1 / d]
    return NormalizedPolynomial(c[: d + 1] if d > 1 else c)


def oracle_ratios(p):
    """Ratios via mpmath roots of P' at 40 digits, independent of the package path."""
    with mpmath.workdps(40):
        c = [mpmath.mpc(complex(x)) for x in p.coeffs]
        dc = [j * c[j] for j in range(1, len(c))]
        zs = mpmath.polyroots(dc[::-1], maxsteps=200, extraprec=200)
        return sorted(float(abs(mpmath.polyval(c[::-1], z) / z)) for z in zs)


class TestCriticalPoints:
    def test_cubic(self):
        rs = critical_points(NormalizedPolynomial([0, 1, 0, 1]))
        assert sorted(rs.roots, key=lambda z: z.imag) == pytest.approx([-1j / sqrt(3), 1j / sqrt(3)], abs=1e-15)

    def test_quadratic(self):
        assert critical_points(NormalizedPolynomial([0, 1, 0.5])).roots == pytest.approx([-1])

    def test_double(self):
        rs = critical_points(NormalizedPolynomial([0, 1, 1, 1 / 3]))
        assert np.max(np.abs(rs.roots + 1)) < 1e-14

    def test_degree_too_small(self):
        with pytest.raises(DegreeTooSmall):
            critical_points(NormalizedPolynomial([0, 1]))

    def test_requires_normalized(self):
        with pytest.raises(NotNormalized):
            ratio_report(Polynomial([0, 2, 1]))


class TestRatioReport:
    def test_double_critical_point(self):
        rep = ratio_report(NormalizedPolynomial([0, 1, 1, 1 / 3]))
        assert rep.ratios == pytest.approx([1 / 3, 1 / 3], abs=1e-15)
        assert rep.smale_ratio == pytest.approx(1 / 3, abs=1e-15)
        assert rep.dual_ratio == pytest.approx(1 / 3, abs=1e-15)

    def test_odd_cubic(self):
        rep = ratio_report(NormalizedPolynomial([0, 1, 0, 1]))
        assert rep.ratios == pytest.approx([2 / 3, 2 / 3], abs=1e-15)

    @pytest.mark.parametrize("d", range(2, 11))
    def test_monomial_family(self, d):
        rep = ratio_report(monomial_family(d))
        assert np.allclose(rep.ratios, 1 - 1 / d, rtol=0, atol=1e-14)

    def test_ratios_by_construction(self, rng):
        p = random_normalized(rng, 7)
        rep = ratio_report(p)
        assert len(rep.critical_points) == 6
        expect = [evaluate(ratio_poly(p), z) for z in rep.critical_points]
        assert np.allclose(rep.ratios, expect, rtol=1e-15, atol=0)

    def test_matches_mpmath_oracle(self, rng):
        for d in range(2, 9):
            p = random_normalized(rng, d)
            got = sorted(np.abs(ratio_report(p).ratios))
            assert np.allclose(got, oracle_ratios(p), rtol=1e-9, atol=1e-12)

    def test_serialization(self):
        obj = ratio_report(NormalizedPolynomial([0, 1, 0, 1])).to_dict()
        assert obj["degree"] == 3 and len(obj["critical_points"]) == 2
        assert obj["S"] == pytest.approx(2 / 3) and obj["D"] == pytest.approx(2 / 3)


class TestBounds:
    def test_values(self):
        # scalar oracle: mpmath at 30 digits
        with mpmath.workdps(30):
            t2 = float(mpmath.tan(mpmath.pi / 8) / 2)
            t3 = float(mpmath.tan(mpmath.pi / 12) / 3)
        assert dual_lower_bounds(2).tan_bound == pytest.approx(t2, rel=1e-15)
        assert dual_lower_bounds(2).tan_bound == pytest.approx(0.2071067811865475, rel=1e-15)
        assert dual_lower_bounds(2).square_bound == 0.25
        assert dual_lower_bounds(3).tan_bound == pytest.approx(t3, rel=1e-15)
        assert dual_lower_bounds(3).square_bound == pytest.approx(1 / 9)
        assert dual_lower_bounds(10).square_bound == pytest.approx(0.01)

    @pytest.mark.parametrize("n", [2, 3, 5, 17, 100, 1000])
    def test_ordering(self, n):
        b = dual_lower_bounds(n)
        assert 0 < b.tan_bound < b.square_bound

    def test_too_small(self):
        with pytest.raises(DegreeTooSmall):
            dual_lower_bounds(1)


class TestChecks:
    @pytest.mark.parametrize("n", range(2, 11))
    def test_sharp_family_margin_zero(self, n):
        out = check_dual_bound(ratio_report(sharp(n)))
        assert abs(out["dual_conjecture"].margin) < 1e-10
        assert out.status is Status.OK

    def test_odd_cubic_margin(self):
        out = check_dual_bound(ratio_report(NormalizedPolynomial([0, 1, 0, 1])), odd=True)
        assert out["odd_theorem"].margin == pytest.approx(1 / 3, abs=1e-15)

    @given(complexes)
    def test_quadratics(self, a):
        if abs(a) < 1e-3:
            return
        rep = ratio_report(NormalizedPolynomial([0, 1, a]))
        assert rep.dual_ratio == pytest.approx(0.5, abs=1e-12)
        assert rep.smale_ratio == pytest.approx(0.5, abs=1e-12)
        assert abs(check_smale_upper(rep)["smale_conjecture"].margin) < 1e-12

    def test_smale(self):
        out = check_smale_upper(ratio_report(monomial_family(6)))
        assert abs(out["smale_conjecture"].margin) < 1e-12
        out = check_smale_upper(ratio_report(NormalizedPolynomial([0, 1, 1, 1 / 3])))
        assert out["smale_conjecture"].margin == pytest.approx(1 / 3)
        assert out["smale_proven"].margin == pytest.approx(4 - 1 / 3)

    def test_flagging(self):
        rep = ratio_report(sharp(4))
        fake = type(rep)(**{**rep.__dict__, "dual_ratio": 0.01, "smale_ratio": 5.0})
        assert check_dual_bound(fake)["dubinin_square"].status is Status.NUMERICAL_ANOMALY
        assert check_dual_bound(fake).status is Status.NUMERICAL_ANOMALY
        fake = type(rep)(**{**rep.__dict__, "dual_ratio": 0.2})
        assert check_dual_bound(fake).status is Status.CANDIDATE_COUNTEREXAMPLE
        assert check_dual_bound(fake, odd=True).status is Status.NUMERICAL_ANOMALY


class TestConservative:
    @pytest.mark.parametrize("d", range(2, 11))
    def test_monomial(self, d):
        assert is_conservative(ratio_report(monomial_family(d)))

    def test_not_conservative(self):
        # mpmath oracle: ratio moduli 0.5573 and 0.9323 (twice)
        p = NormalizedPolynomial([0, 1, 1, 0, 1])
        assert not is_conservative(ratio_report(p))
        assert oracle_ratios(p) == pytest.approx([0.557270750735188, 0.9323044033312227, 0.9323044033312227])

    def test_quadratic(self):
        assert is_conservative(ratio_report(NormalizedPolynomial([0, 1, 3 - 2j])))


class TestProperties:
    def test_floor_and_ceiling(self, rng):
        for _ in range(100):
            p = random_normalized(rng, int(rng.integers(2, 11)))
            rep = ratio_report(p)
            assert rep.dual_ratio >= 1 / rep.degree**2 - 1e-9
            assert rep.smale_ratio <= 4 + 1e-9
            assert rep.smale_ratio <= rep.dual_ratio

    def test_odd_floor(self, rng):
        for d in range(3, 16, 2):
            for _ in range(15):
                assert ratio_report(random_odd(rng, d)).dual_ratio >= 1 / d - 1e-9

    @given(st.integers(3, 12), st.floats(0, 2 * pi), st.integers(0, 2**32 - 1))
    def test_rotation_invariance(self, d, theta, seed):
        p = random_normalized(np.random.default_rng(seed), d)
        j = np.arange(d + 1)
        # e^{-i theta} P(e^{i theta} z) has coefficients c_j e^{i (j-1) theta}
        c = p.coeffs * np.exp(1j * (j - 1) * theta)
        c[0], c[1] = 0, 1
        rot = NormalizedPolynomial(c)
        a = np.sort(np.abs(ratio_report(p).ratios))
        b = np.sort(np.abs(ratio_report(rot).ratios))
        assert np.allclose(a, b, rtol=1e-9, atol=1e-9)

    def test_conservative_implies_equal_extremes(self, rng):
        for d in range(2, 9):
            rep = ratio_report(monomial_family(d))
            assert rep.smale_ratio == pytest.approx(rep.dual_ratio, abs=1e-9)
        for _ in range(50):
            rep = ratio_report(random_normalized(rng, int(rng.integers(3, 9))))
            if rep.dual_ratio - rep.smale_ratio > 1e-9:
                assert not is_conservative(rep)
