import contextlib
import io
import json
import logging
import unittest
from pathlib import Path
from tempfile import TemporaryDirectory

from fractional_mra.cli import EXIT_FAILURE, EXIT_OK, EXIT_VERDICT_FALSE, main
from tests.base_tests_mixin import Base_Tests_Mixin

QUARTER_PI_TEXT = '0.7853981633974483'
THIRD_PI_TEXT = '1.0471975511965976'
HALF_PI_TEXT = '1.5707963267948966'


class TestCli(unittest.TestCase, Base_Tests_Mixin):
    def setUp(self):
        # keep the test runner's logging as it is
        self.root_logger = logging.getLogger()
        self.added_flag = not hasattr(self.root_logger, 'fractional_mra_setup_done')
        self.root_logger.fractional_mra_setup_done = True
        self.temp_dir_handler = TemporaryDirectory()
        self.temp_dir = Path(self.temp_dir_handler.name)

    def tearDown(self):
        if self.added_flag:
            del self.root_logger.fractional_mra_setup_done
        self.temp_dir_handler.cleanup()

    def _main(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            status = main(list(argv))
        return status, stdout.getvalue(), stderr.getvalue()

    def test_validate_haar(self):
        status, out, _ = self._main('validate', '--alpha', QUARTER_PI_TEXT, '--scaling', 'haar')
        self.assertEqual(status, EXIT_OK)
        document = json.loads(out)
        self.assertTrue(document['verdict'])
        self.assertTrue(document['conditions']['c51']['pass'])
        self.assertAlmostEqual(document['convention']['ell'], (2.0 * 3.141592653589793 * 0.5 ** 0.5) ** -0.5)

    def test_validate_bspline_verdict_false(self):
        status, out, _ = self._main('validate', '--alpha', THIRD_PI_TEXT, '--scaling', 'bspline2')
        self.assertEqual(status, EXIT_VERDICT_FALSE)
        document = json.loads(out)
        self.assertFalse(document['verdict'])
        self.assertFalse(document['conditions']['c51']['pass'])

    def test_frft_csv(self):
        out_path = self.temp_dir / 'gaussian.csv'
        status, _, _ = self._main(
            'frft', '--alpha', HALF_PI_TEXT, '--signal', 'gaussian', '--grid-n', '256', '--domain', '8',
            '--format', 'csv', '--out', str(out_path),
        )
        self.assertEqual(status, EXIT_OK)
        lines = out_path.read_text(encoding='utf-8').split('\n')
        self.assertEqual(lines[0], 'u,re,im')
        self.assertEqual(len([line for line in lines[1:] if line]), 256)

    def test_repeated_runs_are_identical(self):
        outputs = []
        for name in ('first.json', 'second.json'):
            out_path = self.temp_dir / name
            status, _, _ = self._main('gram', '--alpha', THIRD_PI_TEXT, '--scaling', 'bspline2', '--out', str(out_path))
            self.assertEqual(status, EXIT_OK)
            outputs.append(out_path.read_bytes())
        self.assertEqual(outputs[0], outputs[1])
        document = json.loads(outputs[0])
        self.assertEqual(document['order'], 8)
        self.assertAlmostEqual(document['entries'][8][8]['re'], 2.0 / 3.0, places=6)

    def test_signal_file(self):
        signal = self.get_test_files_path() / 'signal_good.csv'
        status, out, _ = self._main('frft', '--alpha', '0.0', '--signal', str(signal))
        self.assertEqual(status, EXIT_OK)
        document = json.loads(out)
        self.assertEqual(document['grid']['count'], 3)
        self.assertEqual(document['values'][1], {'re': 1.0, 'im': 0.25})

    def test_special_angle_fails(self):
        status, out, err = self._main('validate', '--alpha', '0.0')
        self.assertEqual(status, EXIT_FAILURE)
        self.assertEqual(out, '')
        record = json.loads(err.strip().splitlines()[-1])
        self.assertEqual(record['command'], 'validate')
        self.assertIn('generic', record['message'])

    def test_missing_signal_file(self):
        status, _, err = self._main('frft', '--alpha', QUARTER_PI_TEXT, '--signal', str(self.temp_dir / 'none.csv'))
        self.assertEqual(status, EXIT_FAILURE)
        self.assertEqual(json.loads(err.strip().splitlines()[-1])['error'], 'FileNotFoundError')

    def test_bad_signal_file(self):
        signal = self.get_test_files_path() / 'signal_non_uniform.csv'
        status, _, err = self._main('frft', '--alpha', QUARTER_PI_TEXT, '--signal', str(signal))
        self.assertEqual(status, EXIT_FAILURE)
        record = json.loads(err.strip().splitlines()[-1])
        self.assertEqual(record['error'], 'FormatError')
        self.assertTrue(record['message'].startswith('line 5:'))

    def test_settings_file(self):
        config = self.get_test_files_path() / 'settings_good.toml'
        status, out, _ = self._main(
            'gram', '--alpha', QUARTER_PI_TEXT, '--scaling', 'haar', '--config', str(config), '--format', 'csv',
        )
        self.assertEqual(status, EXIT_OK)
        rows = out.strip().split('\n')
        self.assertEqual(rows[0], 'n,m,re,im')
        self.assertEqual(len(rows), 1 + 17 * 17)

    def test_missing_settings_file(self):
        status, _, err = self._main('gram', '--alpha', QUARTER_PI_TEXT, '--config', str(self.temp_dir / 'none.toml'))
        self.assertEqual(status, EXIT_FAILURE)
        self.assertIn('none.toml', err)

    def test_report_writes_plot_tables(self):
        out_path = self.temp_dir / 'haar.json'
        status, _, _ = self._main(
            'report', '--alpha', QUARTER_PI_TEXT, '--scaling', 'haar', '--grid-n', '1024', '--out', str(out_path),
        )
        self.assertEqual(status, EXIT_OK)
        self.assertIn('plot', json.loads(out_path.read_text(encoding='utf-8')))
        for suffix, header in (('profile', 'u,g2'), ('limit', 'j,u,modulus'), ('cwt', 'a,b,re,im')):
            table = self.temp_dir / f"haar.{suffix}.csv"
            self.assertTrue(table.is_file(), suffix)
            self.assertEqual(table.read_text(encoding='utf-8').split('\n', 1)[0], header)


if __name__ == '__main__':
    unittest.main()
