import json
import math
import unittest
from pathlib import Path
from tempfile import TemporaryDirectory

import numpy as np

from fractional_mra.analysis_exception import FormatError
from fractional_mra.catalog import TestSignalSpec, make_test_signal
from fractional_mra.report_io import (
    dumps_report, dumps_rows, format_float, load_signal, to_builtin, write_json, write_signal,
)
from fractional_mra.types.enum import SignalKind
from fractional_mra.types.grid import UniformGrid
from tests.base_tests_mixin import Base_Tests_Mixin


class TestLoadSignal(unittest.TestCase, Base_Tests_Mixin):
    def test_good(self):
        signal = load_signal(self.get_test_files_path() / 'signal_good.csv')
        self.assertEqual(signal.grid.count, 3)
        self.assertEqual(signal.grid.start, -1.0)
        self.assertEqual(signal.grid.step, 1.0)
        self.assertEqual(complex(signal.values[1]), complex(1.0, 0.25))

    def test_errors_name_the_line(self):
        for file_name, line_number in (
            ('signal_missing_header.csv', 1),
            ('signal_bad_number.csv', 3),
            ('signal_non_uniform.csv', 5),
        ):
            with self.subTest(file_name=file_name):
                with self.assertRaises(FormatError) as raised:
                    load_signal(self.get_test_files_path() / file_name)
                self.assertEqual(raised.exception.line_number, line_number)
                self.assertTrue(str(raised.exception).startswith(f"line {line_number}:"))

    def test_round_trip_through_file(self):
        grid = UniformGrid.symmetric(4.0, 64)
        signal = make_test_signal(TestSignalSpec(kind=SignalKind.chirp, rate=0.5), grid)
        with TemporaryDirectory() as temp_dir:
            path = write_signal(Path(temp_dir, 'chirp.csv'), signal)
            loaded = load_signal(path)
        self.assertEqual(loaded.grid.count, grid.count)
        self.assertAllClose(loaded.values, signal.values, rtol=0, atol=1e-15)

    def test_too_short(self):
        with TemporaryDirectory() as temp_dir:
            path = Path(temp_dir, 'short.csv')
            path.write_text('t,re,im\n0,1,0\n', encoding='utf-8')
            with self.assertRaises(FormatError):
                load_signal(path)


class TestReports(unittest.TestCase):
    def test_format_float(self):
        self.assertEqual(format_float(1.0 / 3.0, 4), 0.3333)
        self.assertEqual(format_float(math.inf), 'inf')
        self.assertEqual(format_float(-math.inf), '-inf')
        self.assertEqual(format_float(math.nan), 'nan')

    def test_to_builtin(self):
        data = to_builtin({'z': np.array([1 + 2j]), 'n': np.int64(3), 'ok': np.bool_(True), 'none': None})
        self.assertEqual(data, {'z': [{'re': 1.0, 'im': 2.0}], 'n': 3, 'ok': True, 'none': None})

    def test_sorted_and_deterministic(self):
        document = {'b': 1.0, 'a': [0.1, math.inf], 'c': {'y': 2, 'x': 1}}
        first = dumps_report(document)
        self.assertEqual(first, dumps_report(dict(reversed(list(document.items())))))
        self.assertLess(first.index('"a"'), first.index('"b"'))
        self.assertEqual(json.loads(first)['a'][1], 'inf')
        self.assertTrue(first.endswith('}\n'))

    def test_write_json(self):
        with TemporaryDirectory() as temp_dir:
            path = write_json(Path(temp_dir, 'report.json'), {'value': 0.5})
            self.assertEqual(path.read_bytes(), b'{\n  "value": 0.5\n}\n')

    def test_rows(self):
        text = dumps_rows(('n', 'value'), [(1, 0.5), (2, 1.0 / 3.0)], digits=6)
        self.assertEqual(text, 'n,value\n1,0.5\n2,0.333333\n')
        self.assertNotIn('\r', text)


if __name__ == '__main__':
    unittest.main()
