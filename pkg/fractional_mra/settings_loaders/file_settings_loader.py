import os
from pathlib import Path
from typing import *

from pydantic import BaseModel
from fractional_mra.settings_loaders.base_settings_loader import BaseSettingsLoader
from fractional_mra.utils import match_settings_to_model, merge_settings


class FileSettingsLoader(BaseSettingsLoader):
    """
    Reads ``file_name`` from ``start_path`` and from every parent directory;
    files nearer to ``start_path`` win.
    """

    def __init__(
            self,
            file_name: str,
            start_path: Optional[Union[str, Path]] = None,
    ):
        super().__init__()
        self.start_path = start_path or os.getcwd()
        self.file_name = file_name
        self.files_read: List[Path] = []

    def _read_file(self, file_path: Path) -> MutableMapping:
        raise NotImplementedError()

    def read_settings_data(self, model: Type[BaseModel]) -> MutableMapping:
        full_path = Path(self.start_path, self.file_name)
        settings_data = super().read_settings_data(model)

        candidates = [full_path]
        if not Path(self.file_name).is_absolute():
            candidates.extend(
                Path(parent_dir, self.file_name) for parent_dir in full_path.parents if Path(parent_dir, self.file_name) != full_path
            )
        for candidate in candidates:
            if candidate.exists():
                merge_settings(settings_data, match_settings_to_model(model, dict(self._read_file(candidate))))

        if len(self.files_read) == 0:
            raise FileNotFoundError(f"{full_path} or {self.file_name} in parent directories")
        return match_settings_to_model(model, settings_data)

    def __str__(self):
        return f"{self.__class__.__name__}({self.file_name!r} from {self.start_path})"
