from typing import *

from pydantic import BaseModel, ConfigDict, PrivateAttr


class AnalysisSection(BaseModel):
    """
    A member of the settings hierarchy.

    The root (:py:class:`fractional_mra.settings.settings_root.SettingsRoot`)
    tells every section where it lives so validation errors can name it.
    """
    model_config = ConfigDict(
        validate_default=True,
        validate_assignment=True,
        extra='forbid',
    )
    _DEFAULT_PARENTS = ['parents_not_set']
    _parents: List[str] = PrivateAttr(default=_DEFAULT_PARENTS)

    def full_item_name(self, item_name: str = None, delimiter: str = ' -> ') -> str:
        """
        The fully qualified name of this settings item in the hierarchy.
        """
        if self._parents == self._DEFAULT_PARENTS:
            parents = [self.__class__.__name__]
        else:
            parents = self._parents

        if item_name is None:
            return delimiter.join(parents)
        else:
            return delimiter.join(parents + [item_name])

    def add_child(self, name: str, child_object: 'AnalysisSection'):
        child_object._parents = self._parents + [name]

    def get(self, section: str, item: str, fallback=...):
        """
        Dynamic access by section and item name.

        .. warning::

            Linters will not warn about invalid names used here.
        """
        try:
            section_obj = getattr(self, section)
            return getattr(section_obj, item)
        except AttributeError:
            if fallback is ...:
                raise
            else:
                return fallback
