import logging
from copy import deepcopy
from typing import *

from pydantic import BaseModel


class BaseSettingsLoader:
    def __init__(self, settings_data_dict: Dict[str, Any] = None, **kwargs):
        self.log = logging.getLogger(f"{self.__class__.__module__}.{self.__class__.__name__}")
        self._init_settings_data = dict(**kwargs)
        if settings_data_dict is not None:
            self._init_settings_data.update(settings_data_dict)

    def read_settings_data(self, model: Type[BaseModel]) -> MutableMapping:
        return deepcopy(self._init_settings_data)

    def save_settings_data(self, settings: BaseModel):
        raise RuntimeError(f"{self.__class__.__name__} doesn't deal with files")

    def __str__(self):
        return self.__class__.__name__
