import logging
import sys
from contextlib import contextmanager
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import *

from pydantic import ByteSize, Field, model_validator
from pydicti import Dicti

from fractional_mra.settings.analysis_section import AnalysisSection
from fractional_mra.types.enum import StrEnum, auto_str
from fractional_mra.types.path_types import AutoCreateDirectoryPath
from fractional_mra.utils import TZFormatter


class LogLevel(StrEnum):
    CRITICAL = auto_str()
    ERROR = auto_str()
    WARNING = auto_str()
    INFO = auto_str()
    DEBUG = auto_str()
    NOTSET = auto_str()


class LoggingConfig(AnalysisSection):
    console_log_level: LogLevel = LogLevel.INFO
    console_entry_format: str = '%(asctime)s - %(levelname)-8s - %(name)s: %(message)s'
    log_folder: Optional[AutoCreateDirectoryPath] = None
    log_file_name: Optional[str] = None
    """
    Without a log folder and file name nothing is logged to file.
    """
    add_date_to_log_file_name: bool = False
    log_file_name_date_time_format: str = '_%Y_%m_%d_at_%H_%M_%S'
    file_log_level: LogLevel = LogLevel.DEBUG
    log_file_entry_format: str = '%(asctime)s - %(levelname)-8s - %(name)s: %(message)s'
    log_file_max_size: ByteSize = Field(default='10 MB', validate_default=True)
    log_files_to_keep: int = 10
    logging_date_format: str = '%Y-%m-%d %H:%M:%S%z'
    capture_warnings: bool = True
    """
    Route TruncationWarning and friends through the ``py.warnings`` logger.
    """
    log_levels: Dict[str, LogLevel] = {}

    @model_validator(mode='after')
    def _validate_logging(self):
        if self.log_file_name is not None:
            if self.log_folder is None:
                raise ValueError(f"{self.full_item_name()} log_file_name set but no log_folder provided")
        return self

    def log_file_path(self) -> Optional[Path]:
        if self.log_file_name is None:
            return None
        log_file_name = self.log_file_name
        if self.add_date_to_log_file_name:
            stem = Path(log_file_name)
            log_file_name = f"{stem.stem}{datetime.now().strftime(self.log_file_name_date_time_format)}{stem.suffix}"
        if Path(log_file_name).is_absolute():
            return Path(log_file_name)
        return Path(self.log_folder, log_file_name)

    def add_log_file_handler(self) -> Optional[logging.Handler]:
        log = logging.getLogger(__name__)
        log_file_path = self.log_file_path()
        if log_file_path is None:
            return None
        log_file_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            filename=log_file_path,
            maxBytes=self.log_file_max_size,
            backupCount=self.log_files_to_keep,
            encoding='utf8',
        )
        file_handler.setFormatter(TZFormatter(self.log_file_entry_format, self.logging_date_format))
        file_handler.setLevel(self.file_log_level)
        logging.getLogger().addHandler(file_handler)
        log.info(f"File log level = {self.file_log_level} at {log_file_path}")
        return file_handler

    def remove_log_handler(self, handler: Optional[logging.Handler]):
        if handler is not None:
            logging.getLogger().removeHandler(handler)
            handler.close()

    @contextmanager
    def log_file_manager(self):
        handler = self.add_log_file_handler()
        try:
            yield handler
        finally:
            self.remove_log_handler(handler)

    def setup_log_levels(self):
        root_logger = logging.getLogger()
        levels = Dicti(self.log_levels)
        for logger_name, desired_level in levels.items():
            if logger_name.lower() == 'root':
                logger = root_logger
            else:
                logger = logging.getLogger(logger_name)
            logger.propagate = True
            logger.setLevel(str(desired_level).upper())

    def setup_logging(self, console_output=None, use_log_file_setting: bool = True) -> Optional[logging.Handler]:
        """
        Setup logging based on configuration. Runs once per process.
        """
        root_logger = logging.getLogger()
        if hasattr(root_logger, 'fractional_mra_setup_done'):
            return None
        root_logger.fractional_mra_setup_done = True

        for handler in root_logger.handlers:
            handler.flush()
            handler.close()
        root_logger.handlers.clear()
        root_logger.setLevel(logging.DEBUG if self.console_log_level == LogLevel.DEBUG else logging.INFO)

        # results go to stdout; every log record goes to stderr unless redirected
        console_log = logging.StreamHandler(console_output or sys.stderr)
        console_log.setLevel(self.console_log_level)
        if self.console_entry_format:
            console_log.setFormatter(TZFormatter(self.console_entry_format, self.logging_date_format))
        root_logger.addHandler(console_log)

        self.setup_log_levels()
        logging.captureWarnings(self.capture_warnings)

        if use_log_file_setting:
            return self.add_log_file_handler()
        return None
