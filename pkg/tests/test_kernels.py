import random

import mpmath
import pytest
from mpmath import mp

from qhankel.context import ConfigError, QContext, TruncationInsufficient
from qhankel.kernels import (
    kernel_contraction_residual,
    kernel_orthogonality_residual,
    kernel_plus,
    kernel_zero,
)
from qhankel.qfunctions import QBesselParams, qbessel

CTX6 = QContext(q="0.6", precision_digits=50)
CTX5 = QContext(q="0.5", precision_digits=50)
CTX35 = QContext(q="0.35", precision_digits=50)


def gap(a, b):
    with mp.workdps(60):
        return abs(a - mpmath.mpf(b))


class TestKernelPlusValues:
    # frozen against a 90-digit brute force of the defining series
    def test_origin_is_root_of_euler_product(self):
        val = kernel_plus(0, 0, 0, CTX6)
        assert gap(val, "0.7191837734278035017495460243728026435970419343746931146") < mpmath.mpf(10) ** -52

    def test_frozen_values(self):
        cases = [
            ((1, 2, 1), "0.7684597826660496682629047022660837428461220750250619844"),
            ((3, 1, 2), "0.176450739883697137599650932260275752003088518562032974"),
            ((2, 2, 2), "0.3071474448270092144591516057410441319815477667216792153"),
            ((5, 0, 3), "-0.00005008545261492582578773339209587352425145004885738772937"),
            ((2, 3, 1), "-0.2940845664728285626660848871004595866718141976033882901"),
        ]
        for (p, v, w), frozen in cases:
            val = kernel_plus(p, v, w, CTX6)
            assert gap(val, frozen) < mpmath.mpf(10) ** -50, (p, v, w)

    def test_symmetry_under_permutations(self):
        # (-q)^(-p) P+(p,v,w) is invariant under all permutations
        rng = random.Random(40917)
        with mp.workdps(60):
            for _ in range(12):
                p, v, w = (rng.randrange(6) for _ in range(3))
                base = (-CTX5.q) ** (-p) * kernel_plus(p, v, w, CTX5)
                for (a, b, c) in [(v, p, w), (w, v, p), (p, w, v),
                                  (v, w, p), (w, p, v)]:
                    other = (-CTX5.q) ** (-a) * kernel_plus(a, b, c, CTX5)
                    assert abs(other - base) <= mpmath.mpf(10) ** -48 * (1 + abs(base))

    def test_negative_index_rejected(self):
        with pytest.raises(ConfigError):
            kernel_plus(-1, 0, 0, CTX6)
        with pytest.raises(ConfigError):
            kernel_plus(0, 2, -3, CTX6)

    def test_large_asymmetric_indices_stay_finite(self):
        # the stable orientation keeps deep lattice values tiny, not huge
        val = kernel_plus(43, 40, 37, CTX6)
        with mp.workdps(60):
            assert abs(val) < 1


class TestKernelZeroValues:
    def test_frozen_values(self):
        cases = [
            ((2, 1, -1), "-0.01759648793766644985330329931837246401264901925212338501"),
            ((0, 0, 0), "0.2638610002575017687199221771082438309459176848840958022"),
            ((-3, -1, 2), "0.0108159053599996260833145871422272809108702246936765574"),
        ]
        for (p, v, w), frozen in cases:
            val = kernel_zero(p, v, w, CTX6)
            assert gap(val, frozen) < mpmath.mpf(10) ** -50, (p, v, w)

    def test_matches_direct_qbessel(self):
        with mp.workdps(60):
            direct = (-CTX6.q) ** 3 * qbessel(QBesselParams(2, CTX6.q ** 3), CTX6)
            val = kernel_zero(2, 1, -1, CTX6)
            assert abs(val - direct) < mpmath.mpf(10) ** -48

    def test_shift_invariance(self):
        rng = random.Random(2210)
        with mp.workdps(60):
            for _ in range(8):
                p, v, w = (rng.randrange(-4, 5) for _ in range(3))
                s = rng.randrange(-3, 4)
                a = kernel_zero(p, v, w, CTX5)
                b = kernel_zero(p + s, v + s, w + s, CTX5)
                assert abs(a - b) <= mpmath.mpf(10) ** -48 * (1 + abs(a))


class TestOrthogonality:
    def test_plus_first_mode(self):
        tol = mpmath.mpf(10) ** -25
        for idx in [(1, 1, 1, 1), (2, 1, 2, 1), (2, 1, 3, 2), (0, 3, 2, 5)]:
            r = abs(kernel_orthogonality_residual("plus", "first", idx, None, CTX5))
            assert r < tol, idx

    def test_plus_second_mode(self):
        tol = mpmath.mpf(10) ** -25
        for idx in [(0, 0, 0), (1, 0, 0), (2, 2, -1), (1, 1, 3), (3, 1, -2)]:
            r = abs(kernel_orthogonality_residual("plus", "second", idx, None, CTX5))
            assert r < tol, idx

    def test_zero_first_mode(self):
        tol = mpmath.mpf(10) ** -25
        for idx in [(0, 0, 0, 0), (1, -1, 1, -1), (2, 0, 3, 1), (-2, 1, -2, 1)]:
            r = abs(kernel_orthogonality_residual("zero", "first", idx, None, CTX35))
            assert r < tol, idx

    def test_zero_second_mode(self):
        tol = mpmath.mpf(10) ** -25
        for idx in [(0, 0, 0), (1, 0, 2), (-1, -1, -2), (2, -2, 1)]:
            r = abs(kernel_orthogonality_residual("zero", "second", idx, None, CTX35))
            assert r < tol, idx

    def test_mismatched_difference_rejected(self):
        with pytest.raises(ConfigError):
            kernel_orthogonality_residual("plus", "first", (2, 1, 2, 2), None, CTX5)

    def test_bad_kind_and_mode(self):
        with pytest.raises(ConfigError):
            kernel_orthogonality_residual("minus", "first", (1, 1, 1, 1), None, CTX5)
        with pytest.raises(ConfigError):
            kernel_orthogonality_residual("plus", "third", (1, 1, 1, 1), None, CTX5)
        with pytest.raises(ConfigError):
            kernel_orthogonality_residual("plus", "first", (1, 1, 1), None, CTX5)
        with pytest.raises(ConfigError):
            kernel_orthogonality_residual("plus", "second", (1, -1, 0), None, CTX5)

    def test_truncation_cap_enforced(self):
        with pytest.raises(TruncationInsufficient):
            kernel_orthogonality_residual("plus", "first", (1, 1, 1, 1), 3, CTX5)


class TestContraction:
    def test_flat_limit_at_shift_40(self):
        # brute-force oracle gave a gap of 1.2e-19 for this case
        r = abs(kernel_contraction_residual(1, 0, -1, 40, CTX6))
        assert r < mpmath.mpf(10) ** -15
        assert r > mpmath.mpf(10) ** -25

    def test_gap_shrinks_with_shift(self):
        r20 = abs(kernel_contraction_residual(0, 1, 0, 20, CTX6))
        r40 = abs(kernel_contraction_residual(0, 1, 0, 40, CTX6))
        assert r40 < r20 / 100

    def test_shift_must_clear_negative_indices(self):
        with pytest.raises(ConfigError):
            kernel_contraction_residual(-5, 0, 0, 3, CTX6)


class TestCrossModule:
    def test_first_mode_diagonal_equals_wall_primal(self):
        # the p-sum of P+(p,v,w)^2 is the primal Wall orthogonality sum in
        # base Q = q^2 with a = Q^(v-w), times a prefactor that telescopes
        # to exactly 1; both defects must vanish together
        from qhankel.qfunctions import wall_orthogonality_sum

        v, w = 3, 1
        ctx2 = CTX5.with_q(CTX5.q ** 2)
        r_kernel = abs(kernel_orthogonality_residual(
            "plus", "first", (v, w, v, w), None, CTX5))
        with mp.workdps(60):
            a = ctx2.q ** (v - w)
            r_wall = abs(wall_orthogonality_sum(w, w, a, False, None, ctx2))
            assert r_kernel < mpmath.mpf(10) ** -30
            assert r_wall < mpmath.mpf(10) ** -30

    def test_contraction_spec_point(self):
        r = abs(kernel_contraction_residual(0, 1, -1, 40, CTX5))
        assert r < mpmath.mpf(10) ** -20
