import logging
from typing import *

from pydantic import BaseModel

from fractional_mra.settings.analysis_section import AnalysisSection
from fractional_mra.settings.logging_config import LoggingConfig
from fractional_mra.settings.sections import AnalysisSettings, FrameSettings, FrftSettings, OutputSettings


class SettingsRoot(AnalysisSection):
    """
    The root of the settings hierarchy. Every section has defaults, so
    ``SettingsRoot()`` is a complete configuration.
    """
    frft: FrftSettings = FrftSettings()
    analysis: AnalysisSettings = AnalysisSettings()
    frame: FrameSettings = FrameSettings()
    output: OutputSettings = OutputSettings()
    logging: LoggingConfig = LoggingConfig()

    # noinspection PyMethodParameters
    def __init__(__pydantic_self__, **data: Any) -> None:
        super().__init__(**data)
        __pydantic_self__._parents = []
        __pydantic_self__.fill_hierarchy()

    def fill_hierarchy(self):
        log = logging.getLogger(__name__)
        for name in self.model_fields:
            section = getattr(self, name)
            if isinstance(section, AnalysisSection):
                self.add_child(name, section)
                log.debug(f"settings section {section.full_item_name()}")

    def full_item_name(self, item_name: str = None, delimiter: str = ' -> ') -> str:
        if not self._parents:
            return item_name or self.__class__.__name__
        return super().full_item_name(item_name, delimiter)

    def section_dump(self) -> Dict[str, Any]:
        """All sections as plain data, for reports and saving."""
        return {
            name: getattr(self, name).model_dump(mode='json')
            for name in self.model_fields
            if isinstance(getattr(self, name), BaseModel)
        }
