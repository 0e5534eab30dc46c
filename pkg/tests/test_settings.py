import os
import unittest
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import mock

import pydantic

from fractional_mra.settings.settings_from_toml_env import SettingsFromTomlEnv
from fractional_mra.settings.settings_root import SettingsRoot
from fractional_mra.settings_loaders.toml_settings_loader import TomlSettingsLoader
from fractional_mra.types.enum import FrftMethod
from tests.base_tests_mixin import Base_Tests_Mixin


class TestSettings(unittest.TestCase, Base_Tests_Mixin):
    def setUp(self):
        self.env_patch = mock.patch.dict(
            os.environ, {k: v for k, v in os.environ.items() if not k.upper().startswith('FRAC_MRA_')}, clear=True,
        )
        self.env_patch.start()

    def tearDown(self):
        self.env_patch.stop()

    def _read(self, file_name: str) -> SettingsFromTomlEnv:
        return SettingsFromTomlEnv(file_name=file_name, start_path=self.get_test_files_path())

    def test_defaults(self):
        settings = SettingsRoot()
        self.assertEqual(settings.analysis.grid_per_period, 4096)
        self.assertEqual(settings.analysis.tol, 1e-3)
        self.assertEqual(settings.frame.coverage_tol, 1e-2)
        self.assertEqual(settings.frft.method, FrftMethod.fast)
        self.assertEqual(settings.output.significant_digits, 17)
        self.assertEqual(settings.analysis.full_item_name('tol'), 'analysis -> tol')

    def test_read_good(self):
        settings = self._read('settings_good.toml')
        self.assertEqual(settings.frft.edge_tol, 1e-7)
        self.assertEqual(settings.frft.method, FrftMethod.quadrature)
        self.assertTrue(settings.frft.verify)
        self.assertEqual(settings.analysis.grid_per_period, 1024)
        self.assertEqual(settings.analysis.limit_u_samples, [-1.0, 1.0])
        self.assertEqual(settings.frame.trials, 4)
        self.assertEqual(settings.output.significant_digits, 12)
        self.assertEqual(str(settings.logging.log_levels['fractional_mra.catalog']), 'DEBUG')
        # untouched items keep their defaults
        self.assertEqual(settings.analysis.gram_order, 8)

    def test_interpolation(self):
        settings = self._read('settings_good.toml')
        self.assertEqual(settings.analysis.residual_tol, 5e-4)
        self.assertEqual(settings.frame.coverage_tol, 5e-4)

    def test_get(self):
        settings = self._read('settings_good.toml')
        self.assertEqual(settings.get('frame', 'trials'), 4)
        self.assertEqual(settings.get('frame', 'nothing', fallback=None), None)
        with self.assertRaises(AttributeError):
            settings.get('nowhere', 'trials')

    def test_mixed_case(self):
        settings = self._read('settings_mixed_case.toml')
        self.assertEqual(settings.analysis.gram_order, 4)
        self.assertEqual(settings.frame.j_min, -2)
        self.assertEqual(settings.frame.j_max, 3)

    def test_env_overrides_file(self):
        with mock.patch.dict(os.environ, {
            'FRAC_MRA_ANALYSIS_TOL': '0.01',
            'FRAC_MRA_ANALYSIS_LIMIT_U_SAMPLES': '[0.5, 2.0]',
        }):
            settings = self._read('settings_good.toml')
        self.assertEqual(settings.analysis.tol, 0.01)
        self.assertEqual(settings.analysis.residual_tol, 0.01)
        self.assertEqual(settings.analysis.limit_u_samples, [0.5, 2.0])

    def test_bad_value(self):
        with self.assertRaises(pydantic.ValidationError):
            self._read('settings_bad_value.toml')

    def test_bad_range(self):
        with self.assertRaises(pydantic.ValidationError) as raised:
            self._read('settings_bad_range.toml')
        self.assertIn('j_min', str(raised.exception))

    def test_unknown_item(self):
        with self.assertRaises(pydantic.ValidationError) as raised:
            self._read('settings_unknown_item.toml')
        self.assertIn('colour', str(raised.exception))

    def test_bad_interpolation(self):
        with self.assertRaises(ValueError) as raised:
            self._read('settings_bad_interpolation.toml')
        message = str(raised.exception)
        self.assertIn('cnt=2', message)
        self.assertIn('nowhere', message)
        self.assertIn('missing', message)

    def test_missing_file(self):
        with self.assertRaises(FileNotFoundError):
            self._read('no_such_settings.toml')

    def test_found_in_parent_directory(self):
        start = Path(self.get_test_files_path(), 'deeper_dir')
        settings = SettingsFromTomlEnv(file_name='settings_mixed_case.toml', start_path=start)
        self.assertEqual(settings.analysis.gram_order, 4)

    def test_save_and_reload(self):
        settings = self._read('settings_good.toml')
        with TemporaryDirectory() as temp_dir:
            loader = TomlSettingsLoader(file_name='saved.toml', start_path=temp_dir)
            loader.save_settings_data(settings)
            reloaded = SettingsFromTomlEnv(file_name='saved.toml', start_path=temp_dir)
        self.assertEqual(reloaded.section_dump(), settings.section_dump())


if __name__ == '__main__':
    unittest.main()
