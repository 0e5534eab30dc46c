import math
import unittest

import numpy as np
import pydantic

from fractional_mra.analysis_exception import CatalogError, SpecError, SpecialAngleError
from fractional_mra.catalog import (
    TestSignalSpec, eval_function, frft_of_scaling, make_filter_scaling, make_sampled, make_scaling,
    make_test_signal, make_wavelet, parse_kind, scaled,
)
from fractional_mra.frft_core import frft_quadrature, signal_norm
from fractional_mra.types.angle import as_angle
from fractional_mra.types.enum import FunctionKind, Interpolation, SignalKind
from fractional_mra.types.grid import SampledSignal, UniformGrid
from tests.base_tests_mixin import Base_Tests_Mixin, HALF_PI, QUARTER_PI, SIXTH_PI, THIRD_PI


class TestScalingCatalog(unittest.TestCase, Base_Tests_Mixin):
    def test_haar_at_right_angle_is_plain(self):
        phi = make_scaling('haar', HALF_PI)
        self.assertEqual(phi.chirp_rate, 0.0)
        self.assertAlmostEqual(eval_function(phi, 0.5), 1.0)
        self.assertAlmostEqual(eval_function(phi, 1.5), 0.0)
        self.assertAlmostEqual(eval_function(phi, 1.0), 0.0)

    def test_haar_carries_chirp(self):
        phi = make_scaling('haar', QUARTER_PI)
        expected = np.exp(-0.5j * 0.25)
        self.assertAlmostEqual(abs(eval_function(phi, 0.5) - expected), 0.0, places=14)

    def test_bspline_modulus_is_hat(self):
        phi = make_scaling('bspline2', THIRD_PI)
        t = np.linspace(-1.0, 3.0, 81)
        hat = np.clip(1.0 - np.abs(t - 1.0), 0.0, None)
        self.assertAllClose(np.abs(phi.evaluate(t)), hat, atol=1e-14)
        self.assertEqual(phi.time_support(), (0.0, 2.0))

    def test_parse_kind(self):
        self.assertEqual(parse_kind('bspline3'), (FunctionKind.bspline, 3))
        self.assertEqual(parse_kind('Haar'), (FunctionKind.haar, None))
        with self.assertRaises(CatalogError):
            parse_kind('daubechies')

    def test_catalog_errors(self):
        with self.assertRaises(CatalogError):
            make_scaling('mexican_hat', QUARTER_PI)
        with self.assertRaises(CatalogError):
            make_scaling('bspline1', QUARTER_PI)
        with self.assertRaises(CatalogError):
            make_wavelet('haar', QUARTER_PI)
        with self.assertRaises(SpecialAngleError):
            make_scaling('haar', math.pi)

    def test_haar_theta_at_right_angle(self):
        phi = make_scaling('haar', HALF_PI)
        u = np.linspace(-20.0, 20.0, 401)
        expected = np.abs(np.sinc(u / (2.0 * math.pi))) / math.sqrt(2.0 * math.pi)
        self.assertAllClose(np.abs(phi.theta(u, HALF_PI)), expected, atol=1e-14)

    def test_theta_at_zero(self):
        for kind in ('haar', 'shannon'):
            for alpha in (SIXTH_PI, QUARTER_PI, THIRD_PI, HALF_PI):
                with self.subTest(kind=kind, alpha=alpha):
                    phi = make_scaling(kind, alpha)
                    angle = as_angle(alpha)
                    self.assertAlmostEqual(abs(complex(phi.theta(0.0, alpha))), angle.limit_constant, places=12)
        self.assertAlmostEqual(as_angle(HALF_PI).limit_constant, 0.398942, places=6)

    def test_closed_theta_matches_quadrature(self):
        alpha = as_angle(THIRD_PI)
        phi = make_scaling('bspline2', alpha)
        grid = UniformGrid.symmetric(4.0, 8193)
        samples = SampledSignal(grid=grid, values=phi.evaluate(grid.points))
        out = UniformGrid.symmetric(2.0, 41)
        numeric = frft_quadrature(samples, alpha, out)
        closed = frft_of_scaling(phi, alpha, out)
        self.assertLess(float(np.abs(numeric.values - closed.values).max()), 1e-6)

    def test_classical_periodization(self):
        omega = np.linspace(-math.pi, math.pi, 65)
        haar = make_scaling('haar', QUARTER_PI)
        self.assertAllClose(haar.classical_periodization(omega), np.ones(omega.shape), atol=1e-12)
        hat = make_scaling('bspline2', QUARTER_PI)
        self.assertAllClose(hat.classical_periodization(omega), (2.0 + np.cos(omega)) / 3.0, atol=1e-12)

    def test_scaled(self):
        phi = make_scaling('haar', QUARTER_PI)
        doubled = scaled(phi, 2.0)
        self.assertAlmostEqual(abs(eval_function(doubled, 0.25)), 2.0)
        self.assertAlmostEqual(abs(complex(doubled.theta(0.0, QUARTER_PI))),
                               2.0 * abs(complex(phi.theta(0.0, QUARTER_PI))))

    def test_filter_scaling_reproduces_haar(self):
        alpha = as_angle(QUARTER_PI)
        # fractional Haar taps carry exp(-i n^2 cot / 8)
        h = np.array([1.0, np.exp(-0.125j * alpha.cot_alpha)]) / math.sqrt(2.0)
        phi = make_filter_scaling(h, alpha)
        haar = make_scaling('haar', alpha)
        u = np.linspace(-6.0, 6.0, 25)
        self.assertAllClose(phi.theta(u, alpha), haar.theta(u, alpha), atol=1e-9)

    def test_sampled_descriptor(self):
        grid = UniformGrid.symmetric(12.0, 2049)
        signal = make_test_signal(TestSignalSpec(kind=SignalKind.gaussian), grid)
        phi = make_sampled(signal, Interpolation.linear, label='gauss')
        self.assertEqual(phi.name, 'gauss')
        self.assertFalse(phi.demodulated)
        self.assertAlmostEqual(abs(eval_function(phi, 0.0)), 1.0, places=6)
        self.assertAlmostEqual(abs(complex(phi.profile_fourier(0.0))), math.sqrt(2.0 * math.pi), places=6)

    def test_sampled_cannot_be_demodulated(self):
        grid = UniformGrid.symmetric(4.0, 65)
        signal = make_test_signal(TestSignalSpec(kind=SignalKind.gaussian), grid)
        phi = make_sampled(signal)
        with self.assertRaises(pydantic.ValidationError):
            phi.model_validate({**dict(phi), 'demodulated': True})


class TestWaveletCatalog(unittest.TestCase, Base_Tests_Mixin):
    def test_zero_mean(self):
        for kind in ('haar_wavelet', 'mexican_hat', 'shannon_wavelet'):
            with self.subTest(kind=kind):
                psi = make_wavelet(kind, QUARTER_PI)
                self.assertAlmostEqual(abs(complex(psi.profile_fourier(0.0))), 0.0, places=12)
        gaussian = make_wavelet('gaussian', QUARTER_PI)
        self.assertAlmostEqual(abs(complex(gaussian.profile_fourier(0.0))), math.sqrt(2.0 * math.pi))

    def test_haar_wavelet_profile(self):
        psi = make_wavelet('haar_wavelet', HALF_PI)
        self.assertAlmostEqual(eval_function(psi, 0.25), 1.0)
        self.assertAlmostEqual(eval_function(psi, 0.75), -1.0)
        self.assertEqual(psi.time_support(), (0.0, 1.0))


class TestSignals(unittest.TestCase, Base_Tests_Mixin):
    def setUp(self):
        self.grid = UniformGrid.symmetric(16.0, 4096)

    def test_gaussian_norm(self):
        for scale in (0.5, 1.0, 2.0):
            f = make_test_signal(TestSignalSpec(kind=SignalKind.gaussian, scale=scale), self.grid)
            self.assertAlmostEqual(signal_norm(f) ** 2, math.sqrt(math.pi) * scale, places=10)

    def test_hermite_unit_norm(self):
        for order in (0, 1, 4):
            f = make_test_signal(TestSignalSpec(kind=SignalKind.hermite, order=order), self.grid)
            self.assertAlmostEqual(signal_norm(f), 1.0, places=10)

    def test_rectangle(self):
        f = make_test_signal(TestSignalSpec(kind=SignalKind.rectangle, start=-1.0, stop=1.0), self.grid)
        self.assertEqual(float(f.values[self.grid.count // 2].real), 1.0)
        self.assertEqual(float(f.values[0].real), 0.0)
        with self.assertRaises(pydantic.ValidationError):
            TestSignalSpec(kind=SignalKind.rectangle, start=1.0, stop=1.0)

    def test_bandlimited_random_is_reproducible(self):
        spec = TestSignalSpec(kind=SignalKind.bandlimited_random, seed=11, scale=2.0)
        first = make_test_signal(spec, self.grid)
        second = make_test_signal(spec, self.grid)
        self.assertTrue(np.array_equal(first.values, second.values))
        other = make_test_signal(spec.model_copy(update={'seed': 12}), self.grid)
        self.assertFalse(np.array_equal(first.values, other.values))

    def test_band_above_nyquist(self):
        coarse = UniformGrid.symmetric(16.0, 256)
        spec = TestSignalSpec(kind=SignalKind.bandlimited_random, band=100.0)
        with self.assertRaises(SpecError):
            make_test_signal(spec, coarse)


if __name__ == '__main__':
    unittest.main()
