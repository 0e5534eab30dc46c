import os
from typing import *

from pydantic import BaseModel

from fractional_mra.settings_loaders.base_settings_loader import BaseSettingsLoader
from fractional_mra.utils import parse_as_literal_or_json, walk_model

ENV_PREFIX = 'FRAC_MRA_'


class EnvSettingsLoader(BaseSettingsLoader):
    """
    Reads ``<prefix><section>_<item>`` environment variables, case-insensitively.
    List and dict items are parsed as python literals or JSON.
    """

    def __init__(self, env_prefix: str = ENV_PREFIX, settings_data_dict: Dict[str, Any] = None, **kwargs):
        super().__init__(settings_data_dict=settings_data_dict, **kwargs)
        self.env_prefix = env_prefix or ''

    def read_settings_data(self, model: Type[BaseModel]) -> MutableMapping:
        settings_data = super().read_settings_data(model)
        env_vars = {k.lower(): v for k, v in os.environ.items()}

        for field_name, field_info, parents in walk_model(model):
            possible_names = {
                f"{self.env_prefix}{delimiter.join(parents + [field_name])}".lower()
                for delimiter in ('_', '.', ':')
            }
            found = possible_names & env_vars.keys()
            if len(found) > 1:
                raise ValueError(f"Found multiple matches for {parents} {field_name}. They are: {sorted(found)}")
            if not found:
                continue
            env_var = found.pop()
            env_val: Any = env_vars[env_var]
            self.log.info(f"Read ENV {env_var} into {'.'.join(parents + [field_name])}")
            origin = get_origin(field_info.annotation) or field_info.annotation
            if origin in (list, dict, tuple, set):
                env_val = parse_as_literal_or_json(env_val)

            sub_settings = settings_data
            for parent in parents:
                sub_settings = sub_settings.setdefault(parent, dict())
            if field_name not in sub_settings:
                sub_settings[field_name] = env_val
        return settings_data
