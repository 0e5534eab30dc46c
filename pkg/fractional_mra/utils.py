import ast
import json
import logging
import re
from datetime import datetime, timezone
from typing import *

from pydantic import BaseModel
from pydicti import Dicti, dicti

from fractional_mra.analysis_exception import SpecError


def has_sub_fields(inner_type: Type) -> bool:
    return hasattr(inner_type, 'model_fields')


class TZFormatter(logging.Formatter):
    local_timezone = datetime.now(timezone.utc).astimezone().tzinfo

    @staticmethod
    def tz_aware_converter(timestamp) -> datetime:
        return datetime.fromtimestamp(timestamp, TZFormatter.local_timezone)

    def formatTime(self, record, datefmt=None):
        dt = TZFormatter.tz_aware_converter(record.created)
        if datefmt is not None:
            result = dt.strftime(datefmt)
        else:
            time_part = dt.strftime(self.default_time_format)
            result = self.default_msec_format % (time_part, record.msecs)
        return result


def merge_settings(child: MutableMapping, parent: MutableMapping) -> None:
    """Copy into child every item of parent it does not already have (child wins)."""
    for section in parent:
        if section not in child:
            child[section] = parent[section]
        elif isinstance(child[section], MutableMapping) and isinstance(parent[section], MutableMapping):
            merge_settings(child[section], parent[section])


def resolve_variable(root_settings_data: MutableMapping, variable_name: str, part_delimiter: str = ':') -> Any:
    variable_name_parts = variable_name.split(part_delimiter)
    result = root_settings_data
    for part in variable_name_parts:
        # case-insensitive lookup
        if not isinstance(result, dicti):
            result = Dicti(result)
        if part in result:
            result = result[part]
        else:
            raise ValueError(f"<<{part} NOT FOUND when resolving variable with parts: {variable_name_parts}>>")
    return result


_interpolation_re = re.compile(r"\${([^}]+)}")
_MAX_INTERPOLATION_DEPTH = 50


def interpolate_value(*, value: str, container: MutableMapping, root_settings_data: MutableMapping) -> Any:
    """
    Replace ``${section:item}`` (or ``${section.item}``) references, and ``${item}``
    references to the same section, until none are left.

    Throws: ValueError if value can not be interpolated
    """
    new_value = value
    for _ in range(_MAX_INTERPOLATION_DEPTH):
        if not isinstance(new_value, str) or '$' not in new_value:
            return new_value
        parts = []
        next_start = 0
        found = 0
        for variable_found in _interpolation_re.finditer(new_value):
            found += 1
            variable_name = variable_found.groups()[0]
            var_start, var_end = variable_found.span()
            if ':' in variable_name:
                replacement = resolve_variable(root_settings_data, variable_name, part_delimiter=':')
            elif '.' in variable_name:
                replacement = resolve_variable(root_settings_data, variable_name, part_delimiter='.')
            else:
                search_container = Dicti(container)
                if variable_name not in search_container:
                    raise ValueError(f"<<{variable_name} NOT FOUND>>")
                replacement = search_container[variable_name]
            parts.append(new_value[next_start:var_start])
            parts.append(replacement)
            next_start = var_end
        if found == 0:
            return new_value
        parts.append(new_value[next_start:])
        parts = [part for part in parts if part != '']
        if len(parts) == 1:
            # a whole-value reference keeps the referenced type
            new_value = parts[0]
        else:
            new_value = ''.join(str(part) for part in parts)
    raise ValueError(f"Interpolation recursion depth limit reached on value {value}")


def interpolate_values(
        container: Union[MutableMapping, list],
        root_settings_data: MutableMapping,
        breadcrumbs: List[str] = None,
) -> List[Tuple[str, str]]:
    errors = []
    if breadcrumbs is None:
        breadcrumbs = []
    if isinstance(container, MutableMapping):
        value_tuples = list(container.items())
    else:
        value_tuples = list(enumerate(container))

    for attr, value in value_tuples:
        if isinstance(value, (MutableMapping, list)):
            errors.extend(interpolate_values(value, root_settings_data, breadcrumbs + [str(attr)]))
        elif isinstance(value, str):
            try:
                new_value = interpolate_value(value=value, container=container, root_settings_data=root_settings_data)
                if new_value != value:
                    container[attr] = new_value
            except ValueError as e:
                errors.append(('.'.join(breadcrumbs + [str(attr)]), str(e)))
    return errors


def parse_as_literal_or_json(value: str) -> Any:
    try:
        return ast.literal_eval(value)
    except (ValueError, SyntaxError) as el:
        try:
            return json.loads(value)
        except ValueError as ej:
            raise SpecError(
                f"Value {value} could not be parsed as python literal '{el}' or json '{ej}'"
            )


def walk_model(model: Type[BaseModel], parents: List[str] = None) -> Iterator[Tuple[str, Any, List[str]]]:
    """(field name, field info, parent section names) for every leaf field."""
    if parents is None:
        parents = []
    for field_name, field_info in model.model_fields.items():
        if has_sub_fields(field_info.annotation):
            yield from walk_model(field_info.annotation, parents + [field_name])
        else:
            yield field_name, field_info, parents


def match_settings_to_model(model: Type[BaseModel], settings_data: MutableMapping) -> MutableMapping:
    """Rename section and item keys that match model fields case-insensitively, in place."""
    name_map = {str(key).lower(): key for key in settings_data}
    for field_name, field_info in model.model_fields.items():
        source = name_map.get(field_name.lower())
        if source is None:
            continue
        if source != field_name:
            settings_data[field_name] = settings_data.pop(source)
        if has_sub_fields(field_info.annotation) and isinstance(settings_data[field_name], MutableMapping):
            match_settings_to_model(field_info.annotation, settings_data[field_name])
    return settings_data
