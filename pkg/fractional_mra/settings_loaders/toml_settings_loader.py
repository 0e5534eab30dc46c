from enum import Enum
from pathlib import Path
from typing import *

from pydantic import BaseModel

from fractional_mra.settings_loaders.file_settings_loader import FileSettingsLoader


class TomlSettingsLoader(FileSettingsLoader):
    def __init__(
            self,
            file_name: str,
            start_path: Optional[Union[str, Path]] = None,
    ):
        super().__init__(
            start_path=start_path,
            file_name=file_name,
        )
        try:
            import toml
        except ImportError:
            raise RuntimeError(f"Module toml required for TomlSettingsLoader. "
                               f"Use pip install toml or poetry add toml as appropriate.")
        self.toml = toml

    def _read_file(self, file_path: Path) -> MutableMapping:
        self.log.info(f"Reading {file_path}")
        self.files_read.append(file_path)
        with file_path.open('rt', encoding='utf8') as toml_content:
            return self.toml.load(toml_content)

    def save_settings_data(self, settings: BaseModel):
        file_path = Path(self.start_path, self.file_name)
        data = TomlSettingsLoader.prepare_settings_data_for_save(settings)
        with file_path.open('wt', encoding='utf8') as settings_file:
            settings_file.write(self.toml.dumps(data))
        self.log.info(f"Created {file_path}")

    @staticmethod
    def format_value_for_save(field_value):
        if isinstance(field_value, (bool, int, float, str)) and not isinstance(field_value, Enum):
            return field_value
        if isinstance(field_value, Enum):
            return str(field_value)
        if isinstance(field_value, Path):
            return str(field_value)
        if isinstance(field_value, dict):
            return {str(key): TomlSettingsLoader.format_value_for_save(value) for key, value in field_value.items()}
        if isinstance(field_value, (list, tuple, set)):
            return [TomlSettingsLoader.format_value_for_save(value) for value in field_value]
        return str(field_value)

    @staticmethod
    def prepare_settings_data_for_save(settings: BaseModel) -> dict:
        result = dict()
        for field_name in settings.model_fields:
            value = getattr(settings, field_name)
            if value is None:
                # TOML has no null
                continue
            if isinstance(value, BaseModel):
                result[field_name] = TomlSettingsLoader.prepare_settings_data_for_save(value)
            else:
                result[field_name] = TomlSettingsLoader.format_value_for_save(value)
        return result
