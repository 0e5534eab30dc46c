import logging
import os
import unittest
import warnings
from logging.handlers import RotatingFileHandler
from tempfile import TemporaryDirectory

import pydantic

from fractional_mra.analysis_exception import TruncationWarning
from fractional_mra.settings.settings_from_toml_env import SettingsFromTomlEnv
from tests.base_tests_mixin import Base_Tests_Mixin


class TestLogging(unittest.TestCase, Base_Tests_Mixin):
    def setUp(self):
        self.logger = logging.getLogger()
        self.orig_handlers = self.logger.handlers
        self.logger.handlers = []
        self.level = self.logger.level

        # setup_logging runs once per process; undo that for each test
        try:
            # noinspection PyUnresolvedReferences
            del self.logger.fractional_mra_setup_done
        except AttributeError:
            pass

        self.saved_cwd = os.getcwd()
        self.temp_dir_handler = TemporaryDirectory(ignore_cleanup_errors=True)
        self.temp_dir = self.temp_dir_handler.name
        os.chdir(self.temp_dir)

    def tearDown(self):
        for handler in self.logger.handlers:
            handler.close()
        self.logger.handlers = self.orig_handlers
        self.logger.level = self.level
        logging.captureWarnings(False)
        try:
            del self.logger.fractional_mra_setup_done
        except AttributeError:
            pass
        # leave the temp dir so it can be cleaned up
        os.chdir(self.saved_cwd)
        self.temp_dir_handler.cleanup()

    def _read(self, file_name: str) -> SettingsFromTomlEnv:
        return SettingsFromTomlEnv(file_name=file_name, start_path=self.get_test_files_path())

    def test_no_file_handler(self):
        settings = self._read('logging_no_file.toml')
        self.assertIsNone(settings.logging.setup_logging())
        self.assertEqual(self.logger.level, logging.INFO)
        my_module_log = logging.getLogger('my_module')
        self.assertEqual(my_module_log.level, logging.DEBUG)

        for handler in self.logger.handlers:
            self.assertFalse(
                isinstance(handler, logging.FileHandler),
                f"root logger included FileHandler based handler {type(handler)} {handler}"
            )

    def test_setup_runs_once(self):
        settings = self._read('logging_no_file.toml')
        settings.logging.setup_logging()
        handlers = list(self.logger.handlers)
        settings.logging.setup_logging()
        self.assertEqual(handlers, self.logger.handlers)

    def test_rot_file_handler(self):
        settings = self._read('logging_file.toml')
        handler = settings.logging.setup_logging()

        self.assertEqual(2 * 1000 * 1000, settings.logging.log_file_max_size, 'log_file_max_size')
        self.assertIsInstance(handler, RotatingFileHandler)
        self.assertEqual(self.logger.level, logging.INFO)
        my_module_log = logging.getLogger('my_module')
        self.assertEqual(my_module_log.level, logging.DEBUG)

        found_log_handlers = 0
        for root_handler in self.logger.handlers:
            if isinstance(root_handler, RotatingFileHandler):
                found_log_handlers += 1
                self.assertIn(os.path.realpath(self.temp_dir), os.path.realpath(root_handler.baseFilename))
                self.assertEqual(settings.logging.log_file_max_size, root_handler.maxBytes)
                self.assertEqual(3, root_handler.backupCount)
        self.assertEqual(1, found_log_handlers, 'Did not find one RotatingFileHandler')

        my_module_log.debug('Test log entry')
        handler.flush()
        with open(handler.baseFilename, encoding='utf8') as log_file:
            self.assertIn('Test log entry', log_file.read())

    def test_warnings_are_logged(self):
        settings = self._read('logging_file.toml')
        handler = settings.logging.setup_logging()
        warnings.warn('grid edge not decayed', TruncationWarning)
        handler.flush()
        with open(handler.baseFilename, encoding='utf8') as log_file:
            self.assertIn('grid edge not decayed', log_file.read())

    def test_log_file_manager(self):
        settings = self._read('logging_file.toml')
        with settings.logging.log_file_manager() as handler:
            self.assertIn(handler, self.logger.handlers)
        self.assertNotIn(handler, self.logger.handlers)

    def test_file_name_without_folder(self):
        with self.assertRaises(pydantic.ValidationError):
            self._read('logging_bad.toml')


if __name__ == '__main__':
    unittest.main()
