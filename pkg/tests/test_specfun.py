import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagmesh.errors import NumericalError
from lagmesh.specfun import (
    exp_integral_nonpos,
    laguerre_value,
    laguerre_weighted,
    laguerre_weights,
    laguerre_zeros,
    legendre_p,
    legendre_q,
    spherical_bessel_j,
)


class TestLaguerreValue:
    def test_degree_zero_is_one(self):
        assert laguerre_value(0, 5.0) == 1.0

    def test_degree_one(self):
        assert laguerre_value(1, 2.0) == -1.0

    def test_degree_two_explicit_polynomial(self):
        # L_2(x) = 1 - 2x + x^2/2
        assert laguerre_value(2, 2.0) == pytest.approx(1.0 - 4.0 + 2.0, abs=1e-15)

    def test_weighted_matches_plain_at_moderate_arguments(self):
        x = np.linspace(0.1, 40.0, 57)
        plain = np.array([laguerre_value(12, xi) * math.exp(-xi / 2) for xi in x])
        assert laguerre_weighted(12, x) == pytest.approx(plain, rel=1e-12)

    def test_weighted_survives_large_mesh_arguments(self):
        # beyond the last zero of L_512 the damped value must stay finite
        vals = laguerre_weighted(512, np.array([1000.0, 2003.0, 2500.0]))
        assert np.all(np.isfinite(vals))

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            laguerre_value(-1, 1.0)


class TestLaguerreZeros:
    def test_single_zero(self):
        assert laguerre_zeros(1) == pytest.approx([1.0], abs=1e-15)

    def test_two_zeros_closed_form(self):
        assert laguerre_zeros(2) == pytest.approx(
            [2.0 - math.sqrt(2.0), 2.0 + math.sqrt(2.0)], rel=1e-15
        )

    def test_three_zeros_against_cubic_root_oracle(self):
        # roots of 1 - 3x + 3x^2/2 - x^3/6
        oracle = np.sort(np.roots([-1.0 / 6.0, 1.5, -3.0, 1.0]).real)
        zeros = laguerre_zeros(3)
        assert zeros == pytest.approx(oracle, rel=1e-13)
        assert zeros == pytest.approx([0.4157745568, 2.2942803603, 6.2899450829], abs=1e-10)

    @pytest.mark.parametrize("n", [5, 20, 64])
    def test_against_tridiagonal_construction(self, n):
        # Golub-Welsch: zeros are eigenvalues of the Jacobi matrix
        jacobi = (
            np.diag(2.0 * np.arange(n) + 1.0)
            + np.diag(np.arange(1.0, n), 1)
            + np.diag(np.arange(1.0, n), -1)
        )
        oracle = np.linalg.eigvalsh(jacobi)
        assert laguerre_zeros(n) == pytest.approx(oracle, rel=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 7, 19, 40])
    def test_interlacing(self, n):
        inner = laguerre_zeros(n)
        outer = laguerre_zeros(n + 1)
        assert np.all(outer[:-1] < inner) and np.all(inner < outer[1:])

    def test_residual_contract(self):
        for n in (10, 100):
            zeros = laguerre_zeros(n)
            for x in zeros:
                p, p_prev = _pair(n, x)
                derivative = n * (p - p_prev) / x
                assert abs(p) <= 1e-13 * abs(derivative) * x

    @pytest.mark.parametrize("n", [0, 513])
    def test_out_of_range_rejected(self, n):
        with pytest.raises(ValueError):
            laguerre_zeros(n)


def _pair(n, x):
    from lagmesh.specfun import _laguerre_pair

    return _laguerre_pair(n, x)


class TestLaguerreWeights:
    def test_single_point_weight_is_e(self):
        w = laguerre_weights(laguerre_zeros(1))
        assert w == pytest.approx([math.e], rel=1e-14)

    def test_two_point_against_classical_weights(self):
        zeros = laguerre_zeros(2)
        classical = np.array([(2.0 + math.sqrt(2.0)) / 4.0, (2.0 - math.sqrt(2.0)) / 4.0])
        assert laguerre_weights(zeros) == pytest.approx(classical * np.exp(zeros), rel=1e-13)

    @pytest.mark.parametrize("n", [1, 5, 20, 50, 200, 512])
    def test_unit_normalization(self, n):
        zeros = laguerre_zeros(n)
        weights = laguerre_weights(zeros)
        assert np.all(np.isfinite(weights)) and np.all(weights > 0.0)
        total = math.fsum(w * math.exp(-x) for w, x in zip(weights, zeros))
        assert total == pytest.approx(1.0, abs=1e-13)

    @pytest.mark.parametrize("n", [1, 5, 20, 50, 200])
    def test_monomial_exactness(self, n):
        # sum_k w_k x_k^m e^{-x_k} = m! for every m <= 2N-1
        zeros = laguerre_zeros(n)
        log_w = np.log(laguerre_weights(zeros))
        log_x = np.log(zeros)
        for m in range(2 * n):
            total = np.exp(log_w + m * log_x - zeros - math.lgamma(m + 1)).sum()
            assert total == pytest.approx(1.0, rel=1e-11), f"monomial degree {m}"


class TestExpIntegral:
    def test_order_zero(self):
        assert exp_integral_nonpos(0, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-14)

    def test_order_minus_one(self):
        assert exp_integral_nonpos(-1, 1.0) == pytest.approx(2.0 / math.e, rel=1e-14)

    def test_negative_argument(self):
        assert exp_integral_nonpos(0, -0.5) == pytest.approx(-2.0 * math.exp(0.5), rel=1e-14)

    @given(st.floats(-10.0, 10.0).filter(lambda z: abs(z) > 1e-6))
    def test_order_zero_identity(self, z):
        # E_0(z) z e^z = 1 everywhere off the pole
        assert exp_integral_nonpos(0, z) * z * math.exp(z) == pytest.approx(1.0, rel=1e-12)

    def test_pole_rejected(self):
        with pytest.raises(ValueError):
            exp_integral_nonpos(0, 0.0)

    def test_positive_order_rejected(self):
        with pytest.raises(ValueError):
            exp_integral_nonpos(1, 1.0)


class TestLegendreP:
    def test_low_degrees(self):
        assert legendre_p(0, 0.3) == 1.0
        assert legendre_p(1, 0.3) == 0.3
        assert legendre_p(2, 0.5) == pytest.approx(-0.125, abs=1e-15)

    @given(st.integers(0, 12), st.floats(-1.0, 1.0))
    def test_bounded_on_interval(self, l, t):
        assert abs(legendre_p(l, t)) <= 1.0 + 1e-12


class TestLegendreQ:
    def test_closed_forms_at_two(self):
        assert legendre_q(0, 2.0) == pytest.approx(0.5 * math.log(3.0), rel=1e-14)
        assert legendre_q(1, 2.0) == pytest.approx(math.log(3.0) - 1.0, rel=1e-13)
        assert legendre_q(2, 2.0) == pytest.approx(5.5 * 0.5 * math.log(3.0) - 3.0, rel=1e-12)

    @pytest.mark.parametrize("l", [0, 1, 2, 3, 4])
    @pytest.mark.parametrize("x", [1.1, 1.5, 2.0, 10.0])
    def test_against_integral_oracle(self, l, x):
        # Q_l(x) = 1/2 int_{-1}^{1} P_l(t)/(x - t) dt, Gauss-Legendre + fsum
        t, w = np.polynomial.legendre.leggauss(400)
        direct = 0.5 * math.fsum(wi * legendre_p(l, ti) / (x - ti) for wi, ti in zip(w, t))
        mine = legendre_q(l, x)
        assert abs(mine - direct) <= 1e-9 * max(1.0, abs(direct))

    def test_domain_and_degree_errors(self):
        with pytest.raises(ValueError):
            legendre_q(0, 1.0)
        with pytest.raises(ValueError):
            legendre_q(0, 0.5)
        with pytest.raises(ValueError):
            legendre_q(9, 2.0)


class TestSphericalBessel:
    def test_origin(self):
        assert spherical_bessel_j(0, 0.0) == 1.0
        assert spherical_bessel_j(1, 0.0) == 0.0
        assert spherical_bessel_j(5, 0.0) == 0.0

    def test_zero_of_j0_at_pi(self):
        assert abs(spherical_bessel_j(0, math.pi)) < 1e-15

    def test_j1_at_one(self):
        assert spherical_bessel_j(1, 1.0) == pytest.approx(
            math.sin(1.0) - math.cos(1.0), rel=1e-14
        )

    def test_trigonometric_closed_forms(self):
        # recurrence/series vs explicit forms where those are well conditioned
        x = np.linspace(0.5, 30.0, 119)
        j0 = np.sin(x) / x
        j1 = np.sin(x) / x**2 - np.cos(x) / x
        j2 = (3.0 / x**3 - 1.0 / x) * np.sin(x) - 3.0 * np.cos(x) / x**2
        for l, oracle in ((0, j0), (1, j1), (2, j2)):
            assert np.max(np.abs(spherical_bessel_j(l, x) - oracle)) < 1e-12

    def test_small_argument_series_scale(self):
        # j_2(x) -> x^2/15 for x -> 0; the closed form would cancel badly here
        x = 1e-4
        assert spherical_bessel_j(2, x) == pytest.approx(x * x / 15.0, rel=1e-8)

    def test_negative_argument_rejected(self):
        with pytest.raises(ValueError):
            spherical_bessel_j(0, -1.0)
