import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lagmesh.errors import ConfigurationError
from lagmesh.potentials import (
    CustomPotential,
    GaussianPotential,
    YukawaPotential,
    partial_wave_gaussian,
    partial_wave_numeric,
    partial_wave_yukawa,
    vft_gaussian,
    vft_yukawa,
)

momenta = st.floats(0.05, 20.0)


def gaussian_l0_closed_form(p, q, a, b):
    """Independent oracle: -(a / sqrt(pi) b p p') e^{-(p^2+p'^2)/4b^2} sinh(pp'/2b^2)."""
    return (
        -a
        / (math.sqrt(math.pi) * b * p * q)
        * math.exp(-(p * p + q * q) / (4.0 * b * b))
        * math.sinh(p * q / (2.0 * b * b))
    )


class TestFourierTransforms:
    def test_gaussian_at_origin(self):
        assert vft_gaussian(0.0, 1.0, 1.0) == pytest.approx(-1.0 / (8.0 * math.pi**1.5), rel=1e-14)

    def test_gaussian_decay(self):
        assert vft_gaussian(2.0, 1.0, 1.0) == pytest.approx(
            -math.exp(-1.0) / (8.0 * math.pi**1.5), rel=1e-14
        )
        assert vft_gaussian(60.0, 1.0, 1.0) == 0.0  # fully underflowed tail

    def test_yukawa_values(self):
        assert vft_yukawa(0.0, 1.0, 1.0) == pytest.approx(-1.0 / (2.0 * math.pi**2), rel=1e-14)
        assert vft_yukawa(1.0, 1.0, 1.0) == pytest.approx(-1.0 / (4.0 * math.pi**2), rel=1e-14)

    def test_yukawa_power_law_tail(self):
        assert vft_yukawa(1e4, 1.0, 1.0) == pytest.approx(-1.0 / (2.0 * math.pi**2 * 1e8), rel=1e-8)


class TestGaussianKernel:
    def test_matches_closed_form_l0(self):
        assert partial_wave_gaussian(0, 1.0, 1.0, 1.0, 1.0) == pytest.approx(
            gaussian_l0_closed_form(1.0, 1.0, 1.0, 1.0), rel=1e-13
        )
        # frozen from the closed form / angular quadrature oracle
        assert partial_wave_gaussian(0, 1.0, 1.0, 1.0, 1.0) == pytest.approx(
            -0.17831791741872940, rel=1e-12
        )

    def test_small_momentum_limit_finite(self):
        values = [partial_wave_gaussian(0, p, p, 1.0, 1.0) for p in (1e-3, 1e-5, 1e-7)]
        limit = -1.0 / (2.0 * math.sqrt(math.pi))  # sinh(y)/y -> 1
        assert values == pytest.approx([limit] * 3, rel=1e-6)

    def test_matches_numeric_l1(self):
        num = partial_wave_numeric(1, 1.0, 1.0, lambda k: vft_gaussian(k, 1.0, 1.0))
        assert partial_wave_gaussian(1, 1.0, 1.0, 1.0, 1.0) == pytest.approx(num, rel=1e-10)

    def test_no_overflow_at_large_momenta(self):
        assert math.isfinite(partial_wave_gaussian(0, 600.0, 600.0, 1.0, 1.0))
        assert math.isfinite(partial_wave_gaussian(1, 700.0, 0.01, 1.0, 1.0))


class TestYukawaKernel:
    def test_l0_log_form(self):
        assert partial_wave_yukawa(0, 1.0, 1.0, 1.0, 1.0) == pytest.approx(
            -math.log(5.0) / (2.0 * math.pi), rel=1e-13
        )

    def test_l1_closed_form(self):
        expected = -(1.5 * 0.5 * math.log(5.0) - 1.0) / math.pi
        assert partial_wave_yukawa(1, 1.0, 1.0, 1.0, 1.0) == pytest.approx(expected, rel=1e-12)
        assert partial_wave_yukawa(1, 1.0, 1.0, 1.0, 1.0) == pytest.approx(
            -0.06591511286129140, rel=1e-11
        )

    def test_unscreened_limit_rejected(self):
        with pytest.raises(ConfigurationError):
            partial_wave_yukawa(0, 1.0, 1.0, 1.0, 0.0)


class TestNumericKernel:
    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_constant_transform_projects_to_zero(self, l):
        assert abs(partial_wave_numeric(l, 1.0, 2.0, lambda k: 0.25)) < 1e-14

    @pytest.mark.parametrize("l", [0, 1, 2])
    def test_analytic_kernels_match_quadrature_on_grid(self, l):
        grid = (0.2, 0.5, 1.0, 2.0, 5.0)
        for p in grid:
            for q in grid:
                gauss = partial_wave_gaussian(l, p, q, 1.0, 1.0)
                num = partial_wave_numeric(l, p, q, lambda k: vft_gaussian(k, 1.0, 1.0))
                assert gauss == pytest.approx(num, rel=1e-9), f"gaussian l={l} p={p} q={q}"
                yuk = partial_wave_yukawa(l, p, q, 1.0, 1.0)
                num = partial_wave_numeric(l, p, q, lambda k: vft_yukawa(k, 1.0, 1.0))
                assert yuk == pytest.approx(num, rel=1e-9), f"yukawa l={l} p={p} q={q}"


class TestKernelProperties:
    @given(momenta, momenta, st.integers(0, 3))
    def test_symmetry_is_exact(self, p, q, l):
        assert partial_wave_gaussian(l, p, q, 2.0, 1.5) == partial_wave_gaussian(l, q, p, 2.0, 1.5)
        assert partial_wave_yukawa(l, p, q, 2.0, 1.5) == partial_wave_yukawa(l, q, p, 2.0, 1.5)

    @given(momenta, momenta)
    def test_s_wave_kernels_attractive(self, p, q):
        assert partial_wave_gaussian(0, p, q, 1.0, 1.0) < 0.0
        assert partial_wave_yukawa(0, p, q, 1.0, 1.0) < 0.0


class TestPotentialSpecs:
    def test_gaussian_radial_values(self):
        assert GaussianPotential(15.0, 1.0).radial_value(1e-9) == pytest.approx(-15.0, rel=1e-12)
        assert GaussianPotential(3.0, 1.0).radial_value(1.0) == pytest.approx(-3.0 / math.e, rel=1e-14)

    def test_yukawa_radial_value(self):
        assert YukawaPotential(10.0, 1.0).radial_value(1.0) == pytest.approx(-10.0 / math.e, rel=1e-14)

    def test_positivity_required(self):
        with pytest.raises(ConfigurationError):
            GaussianPotential(-1.0, 1.0)
        with pytest.raises(ConfigurationError):
            YukawaPotential(1.0, 0.0)

    def test_custom_kernel_goes_through_quadrature(self):
        custom = CustomPotential(fourier=lambda k: vft_gaussian(k, 1.0, 1.0))
        kernel = custom.kernel(0)
        assert kernel.evaluate(1.0, 1.0) == pytest.approx(
            gaussian_l0_closed_form(1.0, 1.0, 1.0, 1.0), rel=1e-10
        )

    def test_custom_without_radial_form_cannot_do_radial_observables(self):
        custom = CustomPotential(fourier=lambda k: 0.0)
        with pytest.raises(ConfigurationError):
            custom.radial_value(1.0)

    def test_kernel_symmetry_attribute(self):
        kernel = YukawaPotential(10.0, 1.0).kernel(1)
        assert kernel.l == 1
        assert kernel.evaluate(0.3, 2.0) == kernel.evaluate(2.0, 0.3)
