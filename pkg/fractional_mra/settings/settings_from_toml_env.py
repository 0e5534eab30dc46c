from pathlib import Path
from typing import *

from fractional_mra.settings.settings_from_loaders import SettingsFromLoaders
from fractional_mra.settings_loaders.env_settings_loader import ENV_PREFIX, EnvSettingsLoader
from fractional_mra.settings_loaders.toml_settings_loader import TomlSettingsLoader


class SettingsFromTomlEnv(SettingsFromLoaders):
    """Environment variables (``FRAC_MRA_<section>_<item>``) over a TOML file."""

    # noinspection PyMethodParameters
    def __init__(
            __pydantic_self__,
            file_name: str = 'fractional_mra.toml',
            start_path: Optional[Union[str, Path]] = None,
            env_prefix: str = ENV_PREFIX,
            **kwargs: Any
    ) -> None:
        env_loader = EnvSettingsLoader(env_prefix=env_prefix)
        toml_loader = TomlSettingsLoader(start_path=start_path, file_name=file_name)
        super().__init__(
            _settings_loaders=[env_loader, toml_loader],
            **kwargs
        )
