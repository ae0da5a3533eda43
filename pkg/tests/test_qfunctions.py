"""Wall polynomials, q-Bessel, q-Hankel transform, classical evaluators.

Frozen expected values come from direct brute-force summation of the
defining series at 90 digits, independent of the library code paths; they
are parsed inside a working-precision block so no digits are lost.
"""

import random

import mpmath
import pytest
from mpmath import mp

from qhankel.context import (
    BranchCut,
    ConfigError,
    NearPoleDenominator,
    QContext,
    TruncationInsufficient,
)
from qhankel.qfunctions import (
    QBesselParams,
    WallParams,
    bessel_j,
    clear_caches,
    laguerre,
    qbessel,
    qbessel_lattice,
    qhankel_transform,
    wall_orthogonality_sum,
    wall_polynomial,
    wall_via_2phi1,
    wall_via_3phi2,
)

CTX6 = QContext(q="0.6", precision_digits=50)
CTX35 = QContext(q="0.35", precision_digits=50)


class TestWallPolynomial:
    def test_frozen_all_normalizations(self):
        ctx = CTX6
        with ctx.working():
            q = ctx.q
            plain = wall_polynomial(WallParams(2, q * q, q, "plain"), ctx)
            tilde = wall_polynomial(WallParams(2, q * q, q, "tilde"), ctx)
            check = wall_polynomial(WallParams(2, q * q, q, "check"), ctx)
            assert abs(plain - mpmath.mpf(
                "-0.16155837334933973589435774309723889555822328931573")) < mpmath.mpf("1e-45")
            # rational in q = 3/5, so the tilde value is an exact decimal
            assert abs(tilde - mpmath.mpf("-0.1102464")) < mpmath.mpf("1e-45")
            assert abs(check - mpmath.mpf(
                "-0.090322163463459498766384428478172393771692219827591")) < mpmath.mpf("1e-45")

    def test_frozen_degree_five(self):
        ctx = CTX6
        with ctx.working():
            val = wall_polynomial(
                WallParams(5, "0.25", "-0.8", "plain"), ctx)
            assert abs(val - mpmath.mpf(
                "626.78089874089245628636282235866774619029878722124")) < mpmath.mpf("1e-40")

    def test_value_at_zero_is_one(self):
        ctx = CTX6
        for n in (0, 1, 4, 9):
            v = wall_polynomial(WallParams(n, "0.3", 0, "plain"), ctx)
            with ctx.working():
                assert abs(v - 1) < mpmath.mpf("1e-45")

    def test_three_routes_agree(self):
        ctx = CTX6
        with ctx.working():
            q = ctx.q
            cases = [
                (0, mpmath.mpf("0.3"), q),
                (1, q * q, mpmath.mpf("-0.7")),
                (3, mpmath.mpf("0.3"), mpmath.mpc("0.5", "0.25")),
                (6, mpmath.mpc("0.2", "0.1"), q ** 3),
            ]
            for n, a, x in cases:
                direct = wall_polynomial(WallParams(n, a, x, "plain"), ctx)
                via2 = wall_via_2phi1(n, a, x, ctx)
                assert abs(direct - via2) < mpmath.mpf("1e-40") * (1 + abs(direct))
                if x != 0 and a != 0:
                    via3 = wall_via_3phi2(n, a, x, ctx)
                    assert abs(direct - via3) < mpmath.mpf("1e-40") * (1 + abs(direct))

    def test_three_term_recurrence(self):
        # -x p_n = A_n p_(n+1) - (A_n + C_n) p_n + C_n p_(n-1)
        ctx = CTX6
        rng = random.Random(1137)
        with ctx.working():
            q = ctx.q
            a = q * q
            for n in range(1, 9):
                x = mpmath.mpf(rng.uniform(-1.5, 1.5))
                pm = wall_polynomial(WallParams(n - 1, a, x, "plain"), ctx)
                p0 = wall_polynomial(WallParams(n, a, x, "plain"), ctx)
                pp = wall_polynomial(WallParams(n + 1, a, x, "plain"), ctx)
                A = q ** n * (1 - a * q ** (n + 1))
                C = a * q ** n * (1 - q ** n)
                lhs = -x * p0
                rhs = A * pp - (A + C) * p0 + C * pm
                assert abs(lhs - rhs) < mpmath.mpf("1e-42") * (1 + abs(lhs))

    def test_plain_pole_raises_and_tilde_survives(self):
        ctx = CTX6
        with ctx.working():
            apole = ctx.q ** (-2)
        with pytest.raises(NearPoleDenominator):
            wall_polynomial(WallParams(3, apole, "0.5", "plain"), ctx)
        v = wall_polynomial(WallParams(3, apole, "0.5", "tilde"), ctx)
        with ctx.working():
            assert mpmath.isfinite(v)

    def test_check_equals_plain_times_infinite_symbol(self):
        from qhankel.qseries import qpochhammer
        ctx = CTX6
        with ctx.working():
            a = mpmath.mpf("0.45")
            x = mpmath.mpf("0.2")
            plain = wall_polynomial(WallParams(4, a, x, "plain"), ctx)
            check = wall_polynomial(WallParams(4, a, x, "check"), ctx)
            head = qpochhammer(a * ctx.q, "inf", ctx).value
            assert abs(check - plain * head) < mpmath.mpf("1e-44") * (1 + abs(check))

    def test_laguerre_limit(self):
        # p_n((1-q)x; q^alpha; q) -> L_n^(alpha)(x) / L_n^(alpha)(0)
        n, alpha, x = 3, "0.5", "1.25"
        gaps = []
        for qq in ("0.999", "0.9999"):
            ctx = QContext(q=qq, precision_digits=30)
            with ctx.working():
                a = ctx.q_power(mpmath.mpf(alpha))
                xv = (1 - ctx.q) * mpmath.mpf(x)
                wall = wall_polynomial(WallParams(n, a, xv, "plain"), ctx)
                target = laguerre(n, alpha, x, ctx) / laguerre(n, alpha, 0, ctx)
                gaps.append(abs(wall - target))
        assert gaps[1] < mpmath.mpf("5e-3")
        assert gaps[1] < gaps[0] / 5

    def test_param_validation(self):
        with pytest.raises(ConfigError):
            WallParams(-1, "0.3", "0.5")
        with pytest.raises(ConfigError):
            WallParams(2, "0.3", "0.5", "fancy")


class TestWallOrthogonality:
    def test_primal_small_grid(self):
        ctx = CTX6
        with ctx.working():
            for (n, m) in ((0, 0), (2, 2), (2, 4), (1, 5)):
                for a in (ctx.q, mpmath.mpf("0.5")):
                    r = wall_orthogonality_sum(n, m, a, False, None, ctx)
                    assert abs(r) < mpmath.mpf("1e-30")

    def test_dual_small_grid(self):
        ctx = CTX6
        with ctx.working():
            for (k, l) in ((0, 0), (2, 2), (1, 3)):
                for a in (ctx.q, mpmath.mpf("0.5")):
                    r = wall_orthogonality_sum(k, l, a, True, None, ctx)
                    assert abs(r) < mpmath.mpf("1e-30")

    def test_truncation_cap_raises(self):
        ctx = CTX6
        with pytest.raises(TruncationInsufficient):
            wall_orthogonality_sum(1, 1, "0.5", False, 5, ctx)

    def test_parameter_domain(self):
        ctx = CTX6
        with pytest.raises(ConfigError):
            wall_orthogonality_sum(1, 1, "2.0", False, None, ctx)  # a >= 1/q
        with pytest.raises(ConfigError):
            wall_orthogonality_sum(1, 1, complex(0.3, 0.1), False, None, ctx)


class TestQBessel:
    def test_frozen_values(self):
        ctx = CTX6
        with ctx.working():
            q = ctx.q
            v1 = qbessel(QBesselParams("0.5", "0.3"), ctx)
            assert abs(v1 - mpmath.mpf(
                "0.68594518545625557119608048385500591578088392553802")) < mpmath.mpf("1e-45")
            v2 = qbessel(QBesselParams(2, q ** 3), ctx)
            assert abs(v2 - mpmath.mpf(
                "0.081465221933640971543070830177650296354856570611682")) < mpmath.mpf("1e-45")

    def test_negative_integer_order(self):
        # reflection route, ladder-zero lattice route, and the frozen
        # brute-force value of (-q)^3 J_3(q^5; q^2) must all coincide
        ctx = CTX6
        with ctx.working():
            q = ctx.q
            frozen = mpmath.mpf(
                "-0.00019057696544938646873059959373784835433971880238116")
            direct = qbessel(QBesselParams(-3, q * q), ctx)
            lattice = qbessel_lattice(-3, 2, ctx)
            assert abs(direct - frozen) < mpmath.mpf("1e-45")
            assert abs(lattice - frozen) < mpmath.mpf("1e-45")

    def test_deeply_negative_order(self):
        ctx = CTX6
        with ctx.working():
            q = ctx.q
            direct = qbessel(QBesselParams(-12, q), ctx)
            lattice = qbessel_lattice(-12, 1, ctx)
            assert direct != 0
            assert abs(direct - lattice) < mpmath.mpf("1e-40") * abs(direct)

    def test_at_zero(self):
        ctx = CTX6
        with ctx.working():
            assert qbessel(QBesselParams(0, 0), ctx) == 1
            assert qbessel(QBesselParams(2, 0), ctx) == 0
        with pytest.raises(BranchCut):
            qbessel(QBesselParams("-0.5", 0), ctx)

    def test_negative_axis_raises(self):
        ctx = CTX6
        with pytest.raises(BranchCut):
            qbessel(QBesselParams("0.5", "-0.4"), ctx)

    def test_complex_argument_consistency(self):
        ctx = CTX6
        hi = ctx.with_precision(80)
        with hi.working():
            x = mpmath.mpf("0.5") * mpmath.exp(mpmath.mpc(0, mpmath.pi / 3))
            v50 = qbessel(QBesselParams("0.5", x), ctx)
            v80 = qbessel(QBesselParams("0.5", x), hi)
            assert abs(v50 - v80) < mpmath.mpf("1e-44") * (1 + abs(v80))

    def test_lattice_matches_direct(self):
        ctx = CTX6
        with ctx.working():
            q = ctx.q
            for (t, s) in ((2, 3), (0, 1), (4, -2), (-5, 1)):
                lat = qbessel_lattice(t, s, ctx)
                direct = qbessel(QBesselParams(t, q ** s), ctx)
                assert abs(lat - direct) < mpmath.mpf("1e-40") * (1 + abs(direct))

    def test_symmetry_integer_lattice(self):
        ctx = CTX35
        rng = random.Random(2026)
        with ctx.working():
            for _ in range(12):
                t = rng.randint(-6, 6)
                s = rng.randint(-6, 6)
                a = qbessel_lattice(t, s, ctx)
                b = qbessel_lattice(s, t, ctx)
                assert abs(a - b) < mpmath.mpf("1e-40") * (1 + abs(a))

    def test_symmetry_noninteger_exponents(self):
        # J_nu(q^alpha; q^2) = J_alpha(q^nu; q^2) for real exponents
        ctx = CTX6
        with ctx.working():
            q = ctx.q
            nu, alpha = mpmath.mpf("0.5"), mpmath.mpf(2)
            lhs = qbessel(QBesselParams(nu, q ** 2), ctx)
            rhs = qbessel(QBesselParams(alpha, mpmath.sqrt(q)), ctx)
            assert abs(lhs - rhs) < mpmath.mpf("1e-44") * (1 + abs(lhs))

    def test_lattice_orthogonality_small(self):
        # sum_k q^(2k+n+m) J_(k+n)(q^l) J_(k+m)(q^l) = delta_nm
        ctx = CTX35
        with ctx.working():
            q = ctx.q
            for (n, m, l) in ((0, 0, 1), (1, 0, 0), (2, 2, -1), (-1, 2, 1)):
                total = mpmath.mpf(0)
                for k in range(-30, 31):
                    total += q ** (2 * k + n + m) \
                        * qbessel_lattice(k + n, l, ctx) \
                        * qbessel_lattice(k + m, l, ctx)
                target = 1 if n == m else 0
                assert abs(total - target) < mpmath.mpf("1e-25")

    def test_classical_limit(self):
        # J_nu((1-q)x; q^2) -> J_nu(x) as q -> 1
        nu, x = "0.5", "2.0"
        gaps = []
        for qq in ("0.98", "0.998"):
            ctx = QContext(q=qq, precision_digits=30)
            with ctx.working():
                arg = (1 - ctx.q) * mpmath.mpf(x)
                qv = qbessel(QBesselParams(nu, arg), ctx)
                cl = bessel_j(nu, x, ctx)
                gaps.append(abs(qv - cl))
        assert gaps[1] < mpmath.mpf("2e-2")
        assert gaps[1] < gaps[0] / 5


class TestQHankelTransform:
    def test_roundtrip_delta(self):
        ctx = CTX35
        window = (-25, 25)
        with ctx.working():
            f = {2: mpmath.mpf(1)}
            g = qhankel_transform(f, "0.5", "forward", window, ctx)
            h = qhankel_transform(g, "0.5", "inverse", window, ctx)
            for j in range(-8, 9):
                target = 1 if j == 2 else 0
                assert abs(h[j] - target) < mpmath.mpf("1e-20")

    def test_roundtrip_two_point(self):
        ctx = CTX35
        window = (-25, 25)
        with ctx.working():
            f = {0: mpmath.mpf("0.7"), 3: mpmath.mpf("-0.2")}
            g = qhankel_transform(f, 1, "forward", window, ctx)
            h = qhankel_transform(g, 1, "inverse", window, ctx)
            for j in range(-8, 9):
                target = f.get(j, mpmath.mpf(0))
                assert abs(h[j] - target) < mpmath.mpf("1e-20")

    def test_sample_forms_agree(self):
        ctx = CTX35
        window = (-14, 14)
        with ctx.working():
            d = {k: mpmath.mpf(0) for k in range(-14, 15)}
            d[0] = mpmath.mpf(1)
            d[1] = mpmath.mpf("0.5")
            d[3] = mpmath.mpf("-0.25")
            seq = [d[k] for k in range(-14, 15)]
            g1 = qhankel_transform(d, 0, "forward", window, ctx)
            g2 = qhankel_transform(seq, 0, "forward", window, ctx)
            g3 = qhankel_transform(lambda k: d[k], 0, "forward", window, ctx)
            for n in range(-14, 15):
                assert g1[n] == g2[n] == g3[n]

    def test_non_decaying_samples_raise(self):
        ctx = CTX35
        with ctx.working():
            q = ctx.q
            bad = {k: q ** (-3 * k) for k in range(-10, 11)}
        with pytest.raises(TruncationInsufficient):
            qhankel_transform(bad, "0.5", "forward", (-10, 10), ctx)

    def test_validation(self):
        ctx = CTX35
        with pytest.raises(ConfigError):
            qhankel_transform({0: 1}, 0, "sideways", (-5, 5), ctx)
        with pytest.raises(ConfigError):
            qhankel_transform({0: 1}, 0, "forward", (5, -5), ctx)
        with pytest.raises(ConfigError):
            qhankel_transform([1, 2, 3], 0, "forward", (-5, 5), ctx)


class TestClassicalEvaluators:
    def test_laguerre_frozen(self):
        ctx = CTX6
        with ctx.working():
            v = laguerre(3, "0.5", "1.25", ctx)
            assert abs(v - mpmath.mpf(
                "-0.87239583333333333333333333333333333333333333333333")) < mpmath.mpf("1e-40")

    def test_laguerre_recurrence(self):
        # (n+1) L_(n+1) = (2n+1+alpha-x) L_n - (n+alpha) L_(n-1)
        ctx = CTX6
        rng = random.Random(515)
        with ctx.working():
            for n in range(1, 7):
                alpha = mpmath.mpf(rng.uniform(-0.9, 3.0))
                x = mpmath.mpf(rng.uniform(0, 6))
                lm = laguerre(n - 1, alpha, x, ctx)
                l0 = laguerre(n, alpha, x, ctx)
                lp = laguerre(n + 1, alpha, x, ctx)
                lhs = (n + 1) * lp
                rhs = (2 * n + 1 + alpha - x) * l0 - (n + alpha) * lm
                assert abs(lhs - rhs) < mpmath.mpf("1e-42") * (1 + abs(lhs))

    def test_bessel_half_integer_closed_form(self):
        ctx = CTX6
        with ctx.working():
            v = bessel_j("0.5", 2, ctx)
            assert abs(v - mpmath.mpf(
                "0.51301613656182775166569184862728442235480786045167")) < mpmath.mpf("1e-40")

    def test_bessel_recurrence(self):
        # J_(nu-1)(x) + J_(nu+1)(x) = (2 nu / x) J_nu(x)
        ctx = CTX6
        with ctx.working():
            for nu_s, x_s in (("0.5", "0.7"), ("1.0", "2.0"), ("2.3", "5.0")):
                nu = mpmath.mpf(nu_s)
                x = mpmath.mpf(x_s)
                lhs = bessel_j(nu - 1, x, ctx) + bessel_j(nu + 1, x, ctx)
                rhs = 2 * nu / x * bessel_j(nu, x, ctx)
                assert abs(lhs - rhs) < mpmath.mpf("1e-42") * (1 + abs(lhs))

    def test_bessel_first_zero(self):
        ctx = CTX6
        with ctx.working():
            lo, hi = mpmath.mpf(2), mpmath.mpf(3)
            flo = bessel_j(0, lo, ctx)
            for _ in range(70):
                mid = (lo + hi) / 2
                fm = bessel_j(0, mid, ctx)
                if mpmath.sign(fm) == mpmath.sign(flo):
                    lo, flo = mid, fm
                else:
                    hi = mid
            zero = (lo + hi) / 2
            assert abs(zero - mpmath.mpf(
                "2.4048255576957727686216318793264546431242449091460")) < mpmath.mpf("1e-15")

    def test_validation(self):
        ctx = CTX6
        with pytest.raises(ConfigError):
            laguerre(-2, "0.5", 1, ctx)
        with pytest.raises(ConfigError):
            laguerre(2, -2, 1, ctx)  # degenerate alpha hits a zero factor


class TestCaches:
    def test_clear_and_recompute(self):
        ctx = CTX6
        with ctx.working():
            before = qbessel_lattice(1, 2, ctx)
            clear_caches()
            after = qbessel_lattice(1, 2, ctx)
            assert before == after
