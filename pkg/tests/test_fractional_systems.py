import math
import unittest
import warnings

import numpy as np
import pydantic

from fractional_mra.analysis_exception import CoverageError, SpecialAngleError, TruncationWarning
from fractional_mra.catalog import TestSignalSpec, make_scaling, make_test_signal
from fractional_mra.fractional_systems import (
    DemodulatedSpectrum, GramMatrix, chirp_translate, classical_gram, demodulate, dilate_translate,
    dyadic_coefficients, fractional_gram_from_theta, gram_matrix, inner_products,
)
from fractional_mra.types.angle import as_angle
from fractional_mra.types.enum import GramMethod, SignalKind
from fractional_mra.types.grid import UniformGrid
from tests.base_tests_mixin import (
    Base_Tests_Mixin, HALF_PI, QUARTER_PI, SIXTH_PI, THIRD_PI, TWO_THIRDS_PI,
)

BRIDGE_ANGLES = (SIXTH_PI, QUARTER_PI, THIRD_PI, TWO_THIRDS_PI)


class TestAtoms(unittest.TestCase, Base_Tests_Mixin):
    def setUp(self):
        self.t = np.linspace(-3.0, 6.0, 181)

    def test_translate_at_right_angle(self):
        phi = make_scaling('bspline2', HALF_PI)
        for n in (-2, 0, 3):
            atom = chirp_translate(phi, n, HALF_PI)
            self.assertAllClose(atom.evaluate(self.t), phi.evaluate(self.t - n), atol=1e-12)

    def test_translate_formula(self):
        alpha = as_angle(THIRD_PI)
        phi = make_scaling('bspline2', alpha)
        cot = alpha.cot_alpha
        n = 2
        expected = phi.evaluate(self.t - n) * np.exp(-1j * (self.t * n + n * n) * cot)
        self.assertAllClose(chirp_translate(phi, n, alpha).evaluate(self.t), expected, atol=1e-12)

    def test_dilate_at_right_angle(self):
        phi = make_scaling('haar', HALF_PI)
        atom = dilate_translate(phi, 1, 0, HALF_PI)
        t = np.array([0.1, 0.3, 0.45, 0.6, 0.9])
        self.assertAllClose(atom.evaluate(t), math.sqrt(2.0) * phi.evaluate(2.0 * t), atol=1e-12)

    def test_dilate_formula(self):
        alpha = as_angle(QUARTER_PI)
        phi = make_scaling('bspline2', alpha)
        cot = alpha.cot_alpha
        j, k = 2, 3
        t = self.t
        scale = 2.0 ** j
        expected = (
            scale ** 0.5 * phi.evaluate(scale * t - k)
            * np.exp(-0.5j * (t * t - (k / scale) ** 2 - (scale * t - k) ** 2) * cot)
        )
        self.assertAllClose(dilate_translate(phi, j, k, alpha).evaluate(t), expected, atol=1e-12)

    def test_demodulate(self):
        alpha = as_angle(THIRD_PI)
        phi = make_scaling('bspline2', alpha)
        g = demodulate(phi, alpha)
        self.assertAllClose(g.evaluate(self.t), np.clip(1.0 - np.abs(self.t - 1.0), 0.0, None), atol=1e-14)
        plain = make_scaling('haar', HALF_PI)
        self.assertAllClose(demodulate(plain, HALF_PI).evaluate(self.t), plain.evaluate(self.t), atol=1e-14)

    def test_special_angle(self):
        phi = make_scaling('haar', QUARTER_PI)
        with self.assertRaises(SpecialAngleError):
            chirp_translate(phi, 1, 0.0)


class TestGram(unittest.TestCase, Base_Tests_Mixin):
    def test_haar_identity(self):
        for alpha in (SIXTH_PI, QUARTER_PI, THIRD_PI, HALF_PI, TWO_THIRDS_PI):
            with self.subTest(alpha=alpha):
                gram = gram_matrix(make_scaling('haar', alpha), alpha, 8)
                self.assertEqual(gram.method, GramMethod.time_quadrature)
                self.assertLess(gram.identity_defect(), 1e-10)

    def test_shannon_identity(self):
        for alpha in (SIXTH_PI, QUARTER_PI, THIRD_PI, HALF_PI, TWO_THIRDS_PI):
            with self.subTest(alpha=alpha):
                with warnings.catch_warnings(record=True) as caught:
                    warnings.simplefilter('always')
                    gram = gram_matrix(make_scaling('shannon', alpha), alpha, 8)
                self.assertEqual(gram.method, GramMethod.frequency_quadrature)
                self.assertLess(gram.identity_defect(), 1e-3)
                # the spectral band is exact, nothing is truncated
                self.assertEqual(gram.warnings, ())
                self.assertFalse([w for w in caught if issubclass(w.category, TruncationWarning)])

    def test_bspline_tridiagonal(self):
        gram = gram_matrix(make_scaling('bspline2', THIRD_PI), THIRD_PI, 8)
        moduli = gram.moduli()
        expected = (np.diag(np.full(17, 2.0 / 3.0))
                    + np.diag(np.full(16, 1.0 / 6.0), 1)
                    + np.diag(np.full(16, 1.0 / 6.0), -1))
        self.assertAllClose(moduli, expected, atol=1e-6)
        self.assertAlmostEqual(gram.entry(0, 0).real, 2.0 / 3.0, places=6)

    def test_frequency_route_agrees(self):
        phi = make_scaling('bspline2', THIRD_PI)
        in_time = gram_matrix(phi, THIRD_PI, 4)
        in_frequency = fractional_gram_from_theta(phi, THIRD_PI, 4)
        self.assertAllClose(in_frequency.entries, in_time.entries, atol=1e-5)

    def test_time_route_needs_support(self):
        with self.assertRaises(CoverageError):
            gram_matrix(make_scaling('shannon', QUARTER_PI), QUARTER_PI, 2, method=GramMethod.time_quadrature)

    def test_demodulation_bridge(self):
        for kind in ('haar', 'shannon', 'bspline2'):
            for alpha in BRIDGE_ANGLES:
                with self.subTest(kind=kind, alpha=alpha):
                    phi = make_scaling(kind, alpha)
                    fractional = gram_matrix(phi, alpha, 4)
                    classical = classical_gram(demodulate(phi, alpha), 4)
                    self.assertAllClose(fractional.moduli(), classical.moduli(), atol=1e-8)

    def test_hermitian_check(self):
        alpha = as_angle(QUARTER_PI)
        entries = np.eye(3, dtype=complex)
        entries[0, 1] = 0.5
        with self.assertRaises(pydantic.ValidationError):
            GramMatrix(order=1, entries=entries, method=GramMethod.time_quadrature, alpha=alpha)


class TestCoefficients(unittest.TestCase, Base_Tests_Mixin):
    def setUp(self):
        self.grid = UniformGrid.symmetric(16.0, 4096)
        self.f = make_test_signal(TestSignalSpec(kind=SignalKind.gaussian, center=0.5), self.grid)

    def test_inner_products_match_quadrature(self):
        alpha = as_angle(THIRD_PI)
        phi = make_scaling('bspline2', alpha)
        atoms = [chirp_translate(phi, n, alpha) for n in (-1, 0, 1, 2)]
        computed = inner_products(self.f, atoms)
        fine = UniformGrid.symmetric(8.0, 65537)
        f_fine = np.exp(-0.5 * (fine.points - 0.5) ** 2)
        weights = fine.trapezoid_weights()
        for atom, value in zip(atoms, computed):
            expected = np.sum(weights * f_fine * np.conj(atom.evaluate(fine.points)))
            self.assertAlmostEqual(abs(value - expected), 0.0, places=6)

    def test_dyadic_coefficients_match_atoms(self):
        alpha = as_angle(QUARTER_PI)
        phi = make_scaling('bspline2', alpha)
        spectrum = DemodulatedSpectrum(self.f, alpha)
        for j in (0, 1, 2):
            with self.subTest(j=j):
                coefficients = dyadic_coefficients(spectrum, phi, j, -4, 4)
                atoms = [dilate_translate(phi, j, int(k), alpha) for k in coefficients.k]
                expected = inner_products(self.f, atoms)
                scale = float(np.abs(expected).max())
                self.assertAllClose(coefficients.values, expected, atol=1e-6 * scale)

    def test_outside_energy(self):
        alpha = as_angle(QUARTER_PI)
        phi = make_scaling('haar', alpha)
        spectrum = DemodulatedSpectrum(self.f, alpha)
        narrow = dyadic_coefficients(spectrum, phi, 0, 0, 0)
        wide = dyadic_coefficients(spectrum, phi, 0, -12, 12)
        self.assertGreater(narrow.outside_energy, 0.1 * wide.energy)
        self.assertLess(wide.outside_energy, 1e-10 * wide.energy)
        self.assertEqual(wide.index(3).k, 3)


if __name__ == '__main__':
    unittest.main()
