"""Distribution layer: closed-form reductions, quadrature cross-checks,
version equivalence, sampling and the hazard-shape diagnostic."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

import gombur as g
from gombur import DomainError, ParameterError
from gombur.distributions import (
    BetaParams,
    DistributionModel,
    GomburV1Params,
)

UNIFORM = g.gombur_v1(0.0, 1.0)
TABLE_V1 = g.gombur_v1(8.1044, 1.1168)
TABLE_V2 = g.gombur_v2(17.2088, 1.1168)


def quad_moment(model, r):
    """Quadrature route for E[Y^r], independent of the gamma-ratio forms."""
    return g.quadrature_unit(
        lambda y: y ** r * g.pdf(model, y) if 0 < y < 1 else 0.0, tol=1e-11)


def quad_cdf(model, y0):
    """Quadrature route for the CDF, rescaled onto the unit interval."""
    return y0 * g.quadrature_unit(
        lambda t: g.pdf(model, min(max(t * y0, 1e-300), 1 - 1e-16)),
        tol=1e-11)


class TestParameterRecords:
    def test_valid_construction(self):
        assert g.gombur_v1(0.0, 1.0).family == "gombur_v1"
        assert g.gombur_v2(1.0, 0.3).params.shape_a == 1.0
        assert g.mbur(1.2).params.n == 2.0
        assert g.mbur(1.2, n=4.0).params.n == 4.0
        assert g.topp_leone(3.5).params.theta == 3.5  # theta > 2 is allowed

    @pytest.mark.parametrize("ctor,args", [
        (g.gombur_v1, (-0.1, 1.0)),
        (g.gombur_v1, (1.0, 0.0)),
        (g.gombur_v2, (0.5, 1.0)),
        (g.gombur_v2, (2.0, -1.0)),
        (g.mbur, (0.0,)),
        (g.beta, (0.0, 1.0)),
        (g.kumaraswamy, (1.0, 0.0)),
        (g.topp_leone, (0.0,)),
        (g.unit_lindley, (-2.0,)),
    ])
    def test_invalid_parameters(self, ctor, args):
        with pytest.raises(ParameterError):
            ctor(*args)

    def test_family_record_agreement(self):
        with pytest.raises(ParameterError):
            DistributionModel("beta", GomburV1Params(1.0, 1.0))
        with pytest.raises(ParameterError):
            DistributionModel("gombur_v1", BetaParams(1.0, 1.0))
        with pytest.raises(ParameterError):
            DistributionModel("nope", BetaParams(1.0, 1.0))

    def test_make_model(self):
        m = g.make_model("kumaraswamy", (3.0, 12.0))
        assert g.param_values(m) == (3.0, 12.0)
        assert g.param_names(m) == ("alpha", "beta")
        with pytest.raises(ParameterError):
            g.make_model("beta", (1.0,))
        with pytest.raises(ParameterError):
            g.make_model("wat", (1.0,))
        assert m.k == 2
        assert g.mbur(1.0).k == 1


class TestPdf:
    def test_uniform_reduction(self):
        assert g.pdf(UNIFORM, 0.37) == pytest.approx(1.0, abs=1e-12)

    def test_beta22_reduction(self):
        # alpha = 1 collapses to the symmetric Beta(n+1, n+1)
        assert g.pdf(g.gombur_v1(1.0, 1.0), 0.5) == pytest.approx(1.5,
                                                                  abs=1e-12)

    def test_integrates_to_one_at_table_optimum(self):
        a2 = 1.1168 ** 2
        val = g.quadrature_unit(
            lambda w: g.pdf(TABLE_V1, w ** a2) * a2 * w ** (a2 - 1.0),
            tol=1e-11)
        assert val == pytest.approx(1.0, abs=1e-10)

    def test_matches_beta_density(self):
        ys = np.linspace(0.05, 0.95, 19)
        mine = g.pdf(g.gombur_v1(4.0, 1.0), ys)
        ref = np.exp(4.0 * np.log(ys) + 4.0 * np.log1p(-ys)
                     - g.log_beta(5.0, 5.0))
        assert_allclose(mine, ref, rtol=1e-10)

    def test_can_exceed_one_and_diverge(self):
        assert g.pdf(TABLE_V1, 0.42) > 1.0
        # (n+1)/alpha^2 < 1 diverges toward 0+ but stays finite inside
        spiky = g.gombur_v1(0.0, 4.5)
        assert np.isfinite(g.pdf(spiky, 1e-12))
        assert g.pdf(spiky, 1e-12) > 1e3

    @pytest.mark.parametrize("y", [0.0, 1.0, -0.2, 1.4, math.nan])
    def test_endpoints_rejected(self, y):
        with pytest.raises(DomainError):
            g.pdf(UNIFORM, y)


class TestLogPdf:
    def test_uniform_zero(self):
        assert g.log_pdf(UNIFORM, 0.5) == pytest.approx(0.0, abs=1e-14)

    def test_consistent_with_pdf(self):
        ys = np.linspace(0.02, 0.98, 25)
        for model in (TABLE_V1, g.beta(6.8318, 9.2376),
                      g.kumaraswamy(3.3777, 12.0057), g.topp_leone(2.2413),
                      g.unit_lindley(1.6268), g.mbur(1.07)):
            p = g.pdf(model, ys)
            lp = g.log_pdf(model, ys)
            assert_allclose(np.exp(lp), p, rtol=1e-12)

    def test_version_identity_at_table_params(self):
        m2 = g.gombur_v2(2 * 8.1044 + 1, 1.1168)
        assert g.log_pdf(m2, 0.405) == pytest.approx(
            g.log_pdf(g.gombur_v1(8.1044, 1.1168), 0.405), abs=1e-9)

    def test_no_overflow_large_n(self):
        # Gamma(2n+2) alone would overflow near n ~ 85
        val = g.log_pdf(g.gombur_v1(500.0, 1.3), 0.62)
        assert np.isfinite(val)
        val = g.log_pdf(g.gombur_v2(500.0, 0.7), 0.3)
        assert np.isfinite(val)


class TestCdf:
    def test_symmetric_median(self):
        for n in (0.0, 1.0, 8.1044, 50.0):
            assert g.cdf(g.gombur_v1(n, 1.0), 0.5) == pytest.approx(0.5,
                                                                    abs=1e-12)

    def test_uniform(self):
        assert g.cdf(UNIFORM, 0.25) == pytest.approx(0.25, abs=1e-14)

    def test_endpoints(self):
        for model in (TABLE_V1, g.unit_lindley(1.6268)):
            assert g.cdf(model, 0.0) == 0.0
            assert g.cdf(model, 1.0) == 1.0

    def test_transform_identity(self):
        model = g.gombur_v1(2.0, 1.3)
        w = 0.6 ** (1.0 / 1.69)
        assert g.cdf(model, 0.6) == pytest.approx(g.betareg(w, 3.0, 3.0),
                                                  abs=1e-13)

    def test_against_quadrature(self):
        model = g.gombur_v1(2.0, 1.3)
        assert g.cdf(model, 0.6) == pytest.approx(quad_cdf(model, 0.6),
                                                  abs=1e-9)
        ul = g.unit_lindley(1.6268)
        assert g.cdf(ul, 0.405) == pytest.approx(quad_cdf(ul, 0.405),
                                                 abs=1e-9)
        kw = g.kumaraswamy(3.3777, 12.0057)
        assert g.cdf(kw, 0.405) == pytest.approx(quad_cdf(kw, 0.405),
                                                 abs=1e-9)
        tl = g.topp_leone(2.2413)
        assert g.cdf(tl, 0.405) == pytest.approx(quad_cdf(tl, 0.405),
                                                 abs=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            g.cdf(UNIFORM, -0.1)
        with pytest.raises(DomainError):
            g.cdf(UNIFORM, 1.1)


class TestSurvival:
    def test_boundaries(self):
        assert g.survival(TABLE_V1, 0.0) == 1.0
        assert g.survival(TABLE_V1, 1.0) == 0.0

    def test_symmetry(self):
        assert g.survival(g.gombur_v1(3.0, 1.0), 0.5) == pytest.approx(
            0.5, abs=1e-12)

    def test_deep_tail_far_below_epsilon(self):
        val = g.survival(g.gombur_v1(50.0, 1.0), 0.95)
        # frozen from a 40-digit evaluation of I_0.05(51, 51)
        assert val == pytest.approx(7.190556386233438e-39, rel=1e-10)
        assert 0.0 < val < 1e-30

    def test_complement_consistency(self):
        ys = np.linspace(0.05, 0.95, 19)
        for model in (TABLE_V1, g.beta(6.8318, 9.2376),
                      g.topp_leone(2.2413), g.unit_lindley(1.6268),
                      g.kumaraswamy(3.3777, 12.0057)):
            s = g.survival(model, ys)
            c = g.cdf(model, ys)
            assert_allclose(s + c, 1.0, atol=1e-12)


class TestHazard:
    def test_uniform_closed_form(self):
        assert g.hazard(UNIFORM, 0.5) == pytest.approx(2.0, abs=1e-12)
        assert g.hazard(UNIFORM, 0.75) == pytest.approx(4.0, abs=1e-12)

    def test_table_optimum_both_sides_quadrature_checked(self):
        y0 = 0.405
        num = g.pdf(TABLE_V1, y0)
        den = g.survival(TABLE_V1, y0)
        assert 1.0 - quad_cdf(TABLE_V1, y0) == pytest.approx(den, abs=1e-9)
        assert g.hazard(TABLE_V1, y0) == pytest.approx(num / den, rel=1e-12)

    def test_identity_against_parts(self):
        ys = np.linspace(0.05, 0.95, 19)
        for model in (TABLE_V1, g.unit_lindley(1.6268),
                      g.topp_leone(2.2413)):
            h = g.hazard(model, ys)
            s = g.survival(model, ys)
            p = g.pdf(model, ys)
            assert_allclose(h * s, p, rtol=1e-10)

    def test_underflow_signals_infinity(self):
        assert np.isinf(g.hazard(g.gombur_v1(50.0, 1.8), 0.99999973))

    def test_domain(self):
        with pytest.raises(DomainError):
            g.hazard(UNIFORM, 0.0)


class TestReversedHazard:
    def test_uniform_closed_form(self):
        assert g.reversed_hazard(UNIFORM, 0.5) == pytest.approx(2.0,
                                                                abs=1e-12)
        assert g.reversed_hazard(UNIFORM, 0.25) == pytest.approx(4.0,
                                                                 abs=1e-12)

    def test_v2_beta22_reduction(self):
        # v2 with n=3, alpha=1 is Beta(2, 2): pdf(1/2)/cdf(1/2) = 1.5/0.5
        assert g.reversed_hazard(g.gombur_v2(3.0, 1.0), 0.5) == pytest.approx(
            3.0, abs=1e-12)

    def test_identity_against_parts(self):
        ys = np.linspace(0.05, 0.95, 19)
        for model in (TABLE_V1, g.kumaraswamy(3.3777, 12.0057)):
            rh = g.reversed_hazard(model, ys)
            c = g.cdf(model, ys)
            p = g.pdf(model, ys)
            assert_allclose(rh * c, p, rtol=1e-10)


class TestQuantile:
    def test_symmetric_median(self):
        for n in (0.0, 2.0, 8.1044):
            assert g.quantile(g.gombur_v1(n, 1.0), 0.5) == pytest.approx(
                0.5, abs=1e-10)

    def test_alpha_power(self):
        # w-median 1/2 raised to alpha^2 = 2
        model = g.gombur_v1(5.0, math.sqrt(2.0))
        assert g.quantile(model, 0.5) == pytest.approx(0.25, abs=1e-10)

    def test_boundaries(self):
        for model in (TABLE_V1, g.unit_lindley(1.0), g.topp_leone(0.5)):
            assert g.quantile(model, 0.0) == 0.0
            assert g.quantile(model, 1.0) == 1.0

    def test_roundtrip_all_families(self):
        ps = np.arange(0.1, 0.95, 0.1)
        for model in (TABLE_V1, TABLE_V2, g.mbur(1.07),
                      g.beta(6.8318, 9.2376), g.kumaraswamy(3.3777, 12.0057),
                      g.topp_leone(2.2413), g.unit_lindley(1.6268)):
            ys = g.quantile(model, ps)
            assert_allclose(g.cdf(model, ys), ps, atol=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            g.quantile(TABLE_V1, -0.01)
        with pytest.raises(DomainError):
            g.quantile(TABLE_V1, 1.01)


class TestRawMoment:
    def test_uniform_mean(self):
        assert g.raw_moment(UNIFORM, 1) == pytest.approx(0.5, abs=1e-12)

    def test_beta22_second_moment(self):
        assert g.raw_moment(g.gombur_v1(1.0, 1.0), 2) == pytest.approx(
            0.3, abs=1e-12)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_v1_against_quadrature(self, r):
        assert g.raw_moment(TABLE_V1, r) == pytest.approx(
            quad_moment(TABLE_V1, r), abs=1e-8)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_v2_against_quadrature(self, r):
        assert g.raw_moment(TABLE_V2, r) == pytest.approx(
            quad_moment(TABLE_V2, r), abs=1e-8)

    def test_competitor_closed_forms(self):
        bt = g.beta(6.8318, 9.2376)
        assert g.raw_moment(bt, 1) == pytest.approx(quad_moment(bt, 1),
                                                    abs=1e-9)
        kw = g.kumaraswamy(3.3777, 12.0057)
        assert g.raw_moment(kw, 2) == pytest.approx(quad_moment(kw, 2),
                                                    abs=1e-9)
        # Topp-Leone theta=1: cdf y(2-y), mean 1/3 exactly
        assert g.raw_moment(g.topp_leone(1.0), 1) == pytest.approx(
            1.0 / 3.0, abs=1e-9)
        # unit-Lindley mean has the closed form 1/(1+theta)
        assert g.raw_moment(g.unit_lindley(1.6268), 1) == pytest.approx(
            1.0 / 2.6268, abs=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            g.raw_moment(TABLE_V1, 0)
        with pytest.raises(DomainError):
            g.raw_moment(TABLE_V1, 1.5)


class TestSample:
    def test_range_contract(self):
        draws = g.sample(TABLE_V1, 5, seed=99)
        assert draws.shape == (5,)
        assert np.all((draws > 0.0) & (draws < 1.0))

    def test_deterministic(self):
        a = g.sample(TABLE_V1, 100, seed=7)
        b = g.sample(TABLE_V1, 100, seed=7)
        assert np.array_equal(a, b)
        c = g.sample(TABLE_V1, 100, seed=8)
        assert not np.array_equal(a, c)

    def test_uniform_mean(self):
        draws = g.sample(UNIFORM, 100000, seed=123)
        se = draws.std() / math.sqrt(draws.size)
        assert abs(draws.mean() - 0.5) < 3.0 * se

    def test_ks_against_analytic_cdf(self):
        n = 100000
        draws = np.sort(g.sample(TABLE_V1, n, seed=2024))
        z = g.cdf(TABLE_V1, draws)
        i = np.arange(1, n + 1)
        d = max(np.max(i / n - z), np.max(z - (i - 1) / n))
        assert d < 1.36 / math.sqrt(n) * 1.5

    def test_domain(self):
        with pytest.raises(DomainError):
            g.sample(TABLE_V1, 0, seed=1)


class TestHazardScan:
    def test_uniform_increasing(self):
        res = g.hazard_scan(UNIFORM, 64)
        assert res.classification == "increasing"
        assert res.sign_changes == 0
        assert res.survival_underflow_y is None
        assert len(res.y) == 64

    def test_cancellation_diagnostic_50_18(self):
        res = g.hazard_scan(g.gombur_v1(50.0, 1.8), 512)
        # naive 1 - cdf trace oscillates once the true survival drops to the
        # quantization scale of 1.0; the safe trace stays monotone
        assert res.naive_sign_changes >= 1
        assert res.sign_changes == 0
        assert res.classification == "increasing"
        surv = g.survival(g.gombur_v1(50.0, 1.8),
                          res.naive_sign_change_positions)
        assert np.all(surv < 1e-12)
        # the paper-style "interrupt": naive survival hits exact zero
        assert res.naive_zero_y is not None
        assert res.naive_zero_y == pytest.approx(0.59, abs=0.05)
        assert "sign changes" in res.summary

    def test_naive_rise_peak_fall_25_22(self):
        res = g.hazard_scan(g.gombur_v1(25.0, 2.2), 512)
        hn = res.hazard_naive
        finite = np.isfinite(hn) & (hn > 0)
        peak = np.argmax(np.where(finite, hn, -np.inf))
        later = finite & (res.y > res.y[peak])
        # naive trace rises to a local max, then shows lower values before
        # the interrupt; the safe trace is monotone on the same grid
        assert later.any()
        assert np.nanmin(np.where(later, hn, np.nan)) < hn[peak]
        assert res.sign_changes == 0

    def test_bathtub_classification(self):
        res = g.hazard_scan(g.topp_leone(0.5), 256)
        assert res.classification == "bathtub"

    def test_domain(self):
        with pytest.raises(DomainError):
            g.hazard_scan(UNIFORM, 15)
