import math
import unittest

import numpy as np

from fractional_mra.analysis_exception import AliasError, SpecialAngleError, TruncationWarning
from fractional_mra.catalog import TestSignalSpec, make_test_signal
from fractional_mra.frft_core import (
    frft_compose, frft_fast, frft_quadrature, ifrft, kernel_eval, resample, signal_norm,
)
from fractional_mra.types.angle import AngleParam, as_angle
from fractional_mra.types.enum import AngleKind, SignalKind
from fractional_mra.types.grid import SampledSignal, UniformGrid
from tests.base_tests_mixin import (
    Base_Tests_Mixin, HALF_PI, QUARTER_PI, SIXTH_PI, THIRD_PI, TWO_THIRDS_PI,
)

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def gaussian(grid: UniformGrid, scale: float = 1.0) -> SampledSignal:
    return make_test_signal(TestSignalSpec(kind=SignalKind.gaussian, scale=scale), grid)


class TestAngleParam(unittest.TestCase):
    def test_convention_modulus(self):
        for alpha in (SIXTH_PI, QUARTER_PI, THIRD_PI, HALF_PI, TWO_THIRDS_PI, 4.0, 5.5):
            angle = as_angle(alpha)
            self.assertAlmostEqual(abs(angle.c_alpha) ** 2 * 2.0 * math.pi * abs(angle.sin_alpha), 1.0, places=12)

    def test_kinds(self):
        self.assertEqual(as_angle(0.0).kind, AngleKind.identity)
        self.assertEqual(as_angle(math.pi).kind, AngleKind.parity)
        self.assertEqual(as_angle(2.0 * math.pi).kind, AngleKind.identity)
        self.assertEqual(as_angle(-math.pi).kind, AngleKind.parity)
        self.assertEqual(as_angle(1.0).kind, AngleKind.generic)

    def test_special_angle_constants(self):
        with self.assertRaises(SpecialAngleError):
            _ = as_angle(math.pi).cot_alpha
        with self.assertRaises(SpecialAngleError):
            _ = as_angle(0.0).period

    def test_rho_and_reduction(self):
        self.assertAlmostEqual(as_angle(HALF_PI).rho, 1.0)
        self.assertAlmostEqual(as_angle(-HALF_PI).reduced, 1.5 * math.pi)
        self.assertAlmostEqual(as_angle(QUARTER_PI).negated().alpha, -QUARTER_PI)

    def test_limit_constant(self):
        self.assertAlmostEqual(as_angle(HALF_PI).limit_constant, 0.398942, places=6)
        angle = as_angle(THIRD_PI)
        self.assertAlmostEqual(angle.limit_constant ** 2, angle.convention_constant)

    def test_not_finite(self):
        with self.assertRaises(ValueError):
            AngleParam(alpha=float('nan'))


class TestKernel(unittest.TestCase):
    def test_origin_at_right_angle(self):
        value = kernel_eval(0.0, 0.0, HALF_PI)
        self.assertAlmostEqual(abs(value), INV_SQRT_2PI, places=12)
        self.assertAlmostEqual(value.imag, 0.0, places=12)

    def test_closed_form(self):
        alpha = as_angle(THIRD_PI)
        cot, csc = 1.0 / math.tan(THIRD_PI), 1.0 / math.sin(THIRD_PI)
        expected = np.sqrt((1 - 1j * cot) / (2 * math.pi)) * np.exp(1j * ((1.0 + 4.0) * cot / 2 - 2.0 * csc))
        self.assertAlmostEqual(abs(kernel_eval(1.0, 2.0, alpha) - expected), 0.0, places=13)

    def test_broadcast(self):
        t = np.linspace(-1, 1, 5)
        u = np.linspace(-2, 2, 3)
        values = kernel_eval(t[np.newaxis, :], u[:, np.newaxis], QUARTER_PI)
        self.assertEqual(values.shape, (3, 5))

    def test_special_angle(self):
        with self.assertRaises(SpecialAngleError):
            kernel_eval(0.0, 0.0, 0.0)


class TestFrft(unittest.TestCase, Base_Tests_Mixin):
    def setUp(self):
        self.grid = UniformGrid.symmetric(16.0, 4096)
        self.signals = [
            make_test_signal(spec, self.grid) for spec in (
                TestSignalSpec(kind=SignalKind.gaussian),
                TestSignalSpec(kind=SignalKind.gaussian, scale=2.0, center=1.5),
                TestSignalSpec(kind=SignalKind.chirp, rate=1.0, scale=2.0),
                TestSignalSpec(kind=SignalKind.hermite, order=3),
                TestSignalSpec(kind=SignalKind.bandlimited_random, seed=7, scale=2.0),
            )
        ]

    def test_gaussian_at_right_angle(self):
        grid = UniformGrid.symmetric(8.0, 2048)
        table = frft_fast(gaussian(grid), HALF_PI)
        expected = np.exp(-0.5 * table.points ** 2)
        self.assertLess(float(np.abs(table.values - expected).max()), 1e-6)

    def test_fast_matches_quadrature(self):
        grid = UniformGrid.symmetric(32.0, 4096)
        f = gaussian(grid)
        fast = frft_fast(f, THIRD_PI)
        slow = frft_quadrature(f, THIRD_PI, grid)
        self.assertLess(float(np.abs(fast.values - slow.values).max()), 1e-6)

    def test_rectangle_matches_quadrature(self):
        grid = UniformGrid.symmetric(8.0, 1024)
        f = make_test_signal(TestSignalSpec(kind=SignalKind.rectangle), grid)
        fast = frft_fast(f, HALF_PI)
        slow = frft_quadrature(f, HALF_PI, grid)
        self.assertLess(float(np.abs(fast.values - slow.values).max()), 1e-8)

    def test_other_output_grid(self):
        f = gaussian(self.grid)
        out = UniformGrid(start=-3.0, step=0.01, count=601)
        fast = frft_fast(f, QUARTER_PI, out=out)
        slow = frft_quadrature(f, QUARTER_PI, out)
        self.assertLess(float(np.abs(fast.values - slow.values).max()), 1e-8)

    def test_unitarity(self):
        for f in self.signals:
            norm = signal_norm(f)
            for alpha in (SIXTH_PI, QUARTER_PI, THIRD_PI, HALF_PI, TWO_THIRDS_PI):
                with self.subTest(alpha=alpha):
                    transformed = signal_norm(frft_fast(f, alpha))
                    self.assertLessEqual(abs(transformed - norm), 1e-6 * norm)

    def test_inversion(self):
        f = gaussian(self.grid)
        alpha = math.pi / 5.0
        back = ifrft(frft_fast(f, alpha))
        self.assertLess(float(np.abs(back.values - f.values).max()), 1e-6)

    def test_additivity(self):
        for f in self.signals:
            for alpha in (SIXTH_PI, QUARTER_PI, THIRD_PI):
                for beta in (SIXTH_PI, QUARTER_PI, THIRD_PI):
                    with self.subTest(alpha=alpha, beta=beta):
                        composed = frft_compose(f, [alpha, beta])
                        direct = frft_fast(f, alpha + beta)
                        self.assertRelativeError(composed.values, direct.values, 1e-4)
                        self.assertAlmostEqual(composed.alpha.alpha, alpha + beta, places=15)

    def test_identity_and_parity(self):
        f = gaussian(self.grid)
        shifted = make_test_signal(TestSignalSpec(kind=SignalKind.gaussian, center=2.0), self.grid)
        same = frft_fast(shifted, 0.0)
        self.assertAllClose(same.values, shifted.values)
        flipped = frft_fast(shifted, math.pi)
        self.assertAllClose(flipped.values, shifted.values[::-1])
        self.assertAlmostEqual(flipped.grid.start, -self.grid.stop)
        self.assertAlmostEqual(signal_norm(frft_fast(f, 2.0 * math.pi)), signal_norm(f))

    def test_alias_error(self):
        grid = UniformGrid.symmetric(64.0, 256)
        with self.assertRaises(AliasError):
            frft_fast(gaussian(grid), SIXTH_PI)

    def test_truncation_warning(self):
        grid = UniformGrid.symmetric(8.0, 1024)
        wide = gaussian(grid, scale=8.0)
        with self.assertWarns(TruncationWarning):
            table = frft_fast(wide, QUARTER_PI)
        self.assertTrue(table.warnings)

    def test_resample_bandlimited(self):
        f = gaussian(self.grid)
        coarse = UniformGrid.symmetric(8.0, 513)
        resampled = resample(f, coarse)
        self.assertAllClose(resampled.values, np.exp(-0.5 * coarse.points ** 2), atol=1e-9)


if __name__ == '__main__':
    unittest.main()
