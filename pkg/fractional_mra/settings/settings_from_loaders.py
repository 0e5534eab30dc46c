import logging
from typing import *

from fractional_mra.settings.settings_root import SettingsRoot
from fractional_mra.settings_loaders.base_settings_loader import BaseSettingsLoader
from fractional_mra.utils import interpolate_values, match_settings_to_model, merge_settings


class SettingsFromLoaders(SettingsRoot):
    """
    Settings merged from an ordered list of loaders; the first loader to
    provide an item wins. Keyword arguments win over every loader.
    """

    # noinspection PyMethodParameters
    def __init__(
        __pydantic_self__,
        _settings_loaders: List[BaseSettingsLoader],
        **kwargs: Any
    ) -> None:
        log = logging.getLogger(__name__)

        settings_data = match_settings_to_model(type(__pydantic_self__), dict(**kwargs))
        for loader in _settings_loaders:
            log.debug(f"Loading settings with {loader}")
            loader_data = loader.read_settings_data(type(__pydantic_self__))
            merge_settings(settings_data, loader_data)
        log.debug("Interpolating settings references")
        interpolate_errors = interpolate_values(settings_data, settings_data)
        if len(interpolate_errors) > 0:
            log.error(f"{len(interpolate_errors)} variable interpolation settings errors found:")
            errors_str_list = []
            indent = ' ' * 3
            for error in interpolate_errors:
                error_msg = f"{indent}{error[0]}: {error[1]}"
                log.error(error_msg)
                errors_str_list.append(error_msg)
            errors_str = "\n".join(errors_str_list)
            raise ValueError(f"Settings Interpolation Errors (cnt={len(interpolate_errors)}). Errors=\n{errors_str}")
        super().__init__(**settings_data)
