"""Tests for q-shifted factorials, basic hypergeometric sums, Jackson sums.

Frozen decimal strings were produced by brute-force oracles at doubled
precision (the oracle code is kept next to the test where it is cheap).
"""

import random

import mpmath
import pytest
from mpmath import mp

from qhankel.context import (
    ConfigError,
    DivergentSeries,
    NearPoleDenominator,
    QContext,
)
from qhankel.qseries import (
    PhiParams,
    basic_hypergeometric,
    big_q_exponential,
    jackson_q_integral,
    q_gamma,
    qpochhammer,
    qpochhammer_multi,
)


def ctx_q(q="0.5", digits=50):
    return QContext(q, digits)


def brute_poch(a, q, k):
    p = mpmath.mpf(1)
    f = mpmath.mpmathify(a)
    qv = mpmath.mpmathify(q)
    for _ in range(k):
        p *= (1 - f)
        f *= qv
    return p


class TestQPochhammer:
    def test_finite_exact_value(self):
        # (0.5; 0.5)_2 = (1 - 0.5)(1 - 0.25) = 0.375
        sv = qpochhammer("0.5", 2, ctx_q())
        assert sv.value == mpmath.mpf("0.375")
        assert sv.tail_bound == 0
        assert sv.terms_used == 2

    def test_zero_order_is_one(self):
        sv = qpochhammer("0.9", 0, ctx_q())
        assert sv.value == 1

    def test_infinite_product_frozen(self):
        # oracle: brute force 4000 factors at 140 digits
        ctx = ctx_q()
        sv = qpochhammer("0.5", "inf", ctx)
        with ctx.working():
            expected = mpmath.mpf(
                "0.288788095086602421278899721929230780088911905")
            assert abs(sv.value - expected) < mpmath.mpf("1e-44")
        assert sv.tail_bound <= ctx.tolerance

    def test_recurrence_random_sample(self):
        # (a;q)_{k+1} = (a;q)_k * (1 - a q^k)
        rng = random.Random(71)
        ctx = ctx_q("0.37")
        with ctx.working():
            for _ in range(25):
                a = mpmath.mpf(rng.random()) * 2 - mpmath.mpf("0.5")
                k = rng.randrange(0, 12)
                lhs = qpochhammer(a, k + 1, ctx).value
                rhs = qpochhammer(a, k, ctx).value * (1 - a * ctx.q ** k)
                assert abs(lhs - rhs) < mpmath.mpf("1e-45")

    def test_infinite_matches_direct_recursion(self):
        # (a;q)_inf = (1-a) (aq;q)_inf
        ctx = ctx_q("0.71")
        with ctx.working():
            a = mpmath.mpf("0.83")
            full = qpochhammer(a, "inf", ctx).value
            shifted = qpochhammer(a * ctx.q, "inf", ctx).value
            assert abs(full - (1 - a) * shifted) < mpmath.mpf("1e-45")

    def test_complex_argument(self):
        ctx = ctx_q()
        with ctx.working():
            a = mpmath.mpc("0.4", "0.3")
            got = qpochhammer(a, 3, ctx).value
            assert abs(got - brute_poch(a, ctx.q, 3)) < mpmath.mpf("1e-45")

    def test_rejects_negative_order(self):
        with pytest.raises(ConfigError):
            qpochhammer("0.5", -1, ctx_q())

    def test_multi_frozen(self):
        # (0.3, 0.7; q)_1 = 0.7 * 0.3 = 0.21
        ctx = ctx_q()
        sv = qpochhammer_multi(["0.3", "0.7"], 1, ctx)
        with ctx.working():
            assert abs(sv.value - mpmath.mpf("0.21")) < mpmath.mpf("1e-55")

    def test_multi_empty_is_one(self):
        sv = qpochhammer_multi([], "inf", ctx_q())
        assert sv.value == 1 and sv.tail_bound == 0


class TestBasicHypergeometric:
    def test_1phi1_frozen(self):
        # 1phi1(0; 0.25; q=0.5, z=0.25); oracle: 300-term direct sum, 120 digits
        ctx = ctx_q()
        sv = basic_hypergeometric(PhiParams(["0"], ["0.25"], "0.25"), ctx)
        with ctx.working():
            expected = mpmath.mpf(
                "0.450969970624051479613666182856621354270607124")
            assert abs(sv.value - expected) < mpmath.mpf("1e-44")
        assert sv.tail_bound <= ctx.tolerance

    def test_q_binomial_theorem(self):
        # 1phi0(a; -; q, z) = (a z;q)_inf / (z;q)_inf
        rng = random.Random(402)
        ctx = ctx_q("0.6")
        with ctx.working():
            for _ in range(8):
                a = mpmath.mpf(rng.uniform(-0.9, 0.9))
                z = mpmath.mpf(rng.uniform(-0.8, 0.8))
                lhs = basic_hypergeometric(PhiParams([a], [], z), ctx).value
                rhs = (qpochhammer(a * z, "inf", ctx).value
                       / qpochhammer(z, "inf", ctx).value)
                assert abs(lhs - rhs) < mpmath.mpf("1e-42") * (1 + abs(rhs))

    def test_terminating_sum_is_exact_polynomial(self):
        # 2phi1(q^-3, 0; b; q, z) is a degree-3 polynomial in z
        ctx = ctx_q("0.5")
        with ctx.working():
            qinv3 = ctx.q ** -3
            sv = basic_hypergeometric(
                PhiParams([qinv3, "0"], ["0.3"], "0.7"), ctx)
            assert sv.tail_bound == 0
            assert sv.terms_used == 4  # terms k = 0..3 evaluated
            # brute force the four terms
            total = mpmath.mpf(0)
            for k in range(4):
                total += (brute_poch(qinv3, ctx.q, k)
                          / (brute_poch("0.3", ctx.q, k)
                             * brute_poch(ctx.q, ctx.q, k))
                          * mpmath.mpf("0.7") ** k)
            assert abs(sv.value - total) < mpmath.mpf("1e-45")

    def test_radius_zero_without_termination_rejected(self):
        with pytest.raises(DivergentSeries):
            basic_hypergeometric(
                PhiParams(["0.5", "0.4"], [], "0.1"), ctx_q())

    def test_unit_disc_boundary_rejected(self):
        with pytest.raises(DivergentSeries):
            basic_hypergeometric(
                PhiParams(["0.5", "0.2"], ["0.3"], "1.0"), ctx_q())

    def test_terminating_beats_divergence(self):
        ctx = ctx_q()
        with ctx.working():
            sv = basic_hypergeometric(
                PhiParams([ctx.q ** -2, "0.4"], [], "2.5"), ctx)
            assert sv.terms_used == 3

    def test_denominator_pole_rejected(self):
        ctx = ctx_q()
        with ctx.working():
            with pytest.raises(NearPoleDenominator):
                basic_hypergeometric(
                    PhiParams(["0"], [ctx.q ** -2], "0.2"), ctx)

    def test_regularized_matches_direct_away_from_poles(self):
        # (b;q)_inf * series, compared against the two factors separately
        ctx = ctx_q("0.45")
        with ctx.working():
            b = mpmath.mpf("0.35")
            reg = basic_hypergeometric(
                PhiParams(["0"], [b], "0.3",
                          regularize_first_denominator=True), ctx).value
            plain = basic_hypergeometric(
                PhiParams(["0"], [b], "0.3"), ctx).value
            binf = qpochhammer(b, "inf", ctx).value
            assert abs(reg - binf * plain) < mpmath.mpf("1e-42")

    def test_regularized_finite_at_pole(self):
        # with b1 = q^-2 the regularized sum must start at k = 2:
        # value equals sum_k>=2 (b1 q^k;q)_inf z^k/(q;q)_k for 1phi1(0;b1;q,z)
        ctx = ctx_q("0.5")
        with ctx.working():
            b1 = ctx.q ** -2
            z = mpmath.mpf("0.3")
            got = basic_hypergeometric(
                PhiParams(["0"], [b1], z,
                          regularize_first_denominator=True), ctx).value
            total = mpmath.mpf(0)
            for k in range(2, 80):
                total += (qpochhammer(b1 * ctx.q ** k, "inf", ctx).value
                          * (-1) ** k * ctx.q ** (k * (k - 1) // 2)
                          * z ** k / brute_poch(ctx.q, ctx.q, k))
            assert abs(got - total) < mpmath.mpf("1e-42")

    def test_regularized_continuous_across_pole(self):
        ctx = ctx_q("0.5")
        with ctx.working():
            b1 = ctx.q ** -2
            eps = mpmath.mpf("1e-20")
            vals = []
            for b in (b1 * (1 - eps), b1, b1 * (1 + eps)):
                vals.append(basic_hypergeometric(
                    PhiParams(["0"], [b], "0.3",
                              regularize_first_denominator=True), ctx).value)
            assert abs(vals[0] - vals[1]) < mpmath.mpf("1e-18")
            assert abs(vals[2] - vals[1]) < mpmath.mpf("1e-18")

    def test_precision_doubling_stability(self):
        p50 = basic_hypergeometric(
            PhiParams(["0.2"], ["0.7"], "0.55"), ctx_q("0.8", 50)).value
        p100 = basic_hypergeometric(
            PhiParams(["0.2"], ["0.7"], "0.55"), ctx_q("0.8", 100)).value
        with mp.workdps(110):
            assert abs(p50 - p100) < mpmath.mpf("1e-44")


class TestBigQExponential:
    def test_frozen_value(self):
        # E_{q^2}(1) = (-1; 0.25)_inf at q = 0.5; brute-force oracle
        ctx = ctx_q()
        sv = big_q_exponential("1", ctx)
        with ctx.working():
            expected = mpmath.mpf(
                "2.71181934772695876069108846970791860244339909")
            assert abs(sv.value - expected) < mpmath.mpf("1e-44")

    def test_zero_gives_one(self):
        assert big_q_exponential("0", ctx_q()).value == 1

    def test_base_is_squared(self):
        ctx = ctx_q("0.7")
        with ctx.working():
            direct = qpochhammer("-0.4", "inf", ctx.with_q(ctx.q ** 2)).value
            got = big_q_exponential("0.4", ctx).value
            assert abs(direct - got) < mpmath.mpf("1e-45")


class TestJacksonIntegral:
    def test_identity_function_frozen(self):
        # integral of x over the truncated lattice: 2/3 up to q^122
        ctx = ctx_q()
        sv = jackson_q_integral(lambda x: x, (0, 60), ctx)
        with ctx.working():
            assert abs(sv.value - mpmath.mpf(2) / 3) < mpmath.mpf("1e-30")
        assert sv.terms_used == 61

    def test_decaying_integrand_has_finite_tail(self):
        ctx = ctx_q("0.5")
        with ctx.working():
            sv = jackson_q_integral(lambda x: x ** 2, (-10, 80), ctx)
            # full bilateral sum of x^2 weight: diverges toward k -> -inf,
            # so the heuristic must flag the non-decaying left boundary
            assert sv.tail_bound == mpmath.inf

    def test_window_scaling_against_geometric_series(self):
        ctx = ctx_q("0.25")
        with ctx.working():
            sv = jackson_q_integral(lambda x: 1, (0, 120), ctx)
            assert abs(sv.value - 1) < mpmath.mpf("1e-40")

    def test_bad_window_rejected(self):
        with pytest.raises(ConfigError):
            jackson_q_integral(lambda x: x, (5, 1), ctx_q())


class TestQGamma:
    def test_small_integers(self):
        ctx = ctx_q()
        with ctx.working():
            assert abs(q_gamma(2, ctx) - 1) < mpmath.mpf("1e-45")
            # Gamma_q(3) = [2]_q = 1 + q
            assert abs(q_gamma(3, ctx) - (1 + ctx.q)) < mpmath.mpf("1e-45")

    def test_functional_equation(self):
        # Gamma_q(x+1) = [x]_q Gamma_q(x), [x]_q = (1-q^x)/(1-q)
        ctx = ctx_q("0.62")
        with ctx.working():
            x = mpmath.mpf("1.37")
            bracket = (1 - ctx.q ** x) / (1 - ctx.q)
            assert abs(q_gamma(x + 1, ctx) - bracket * q_gamma(x, ctx)) \
                < mpmath.mpf("1e-43")


class TestContext:
    def test_tolerance_floor_enforced(self):
        with pytest.raises(ConfigError):
            QContext("0.5", 50, "1e-60")

    def test_q_range_enforced(self):
        for bad in ("0", "1", "1.2", "-0.3"):
            with pytest.raises(ConfigError):
                QContext(bad, 50)

    def test_membership_detection(self):
        ctx = ctx_q("0.5")
        with ctx.working():
            assert ctx.negative_q_exponent(ctx.q ** -7) == 7
            assert ctx.negative_q_exponent(mpmath.mpf("3.1")) is None
            assert ctx.negative_q_exponent(ctx.q ** 4) is None
