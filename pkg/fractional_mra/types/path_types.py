from pathlib import Path
from typing import Any

from pydantic import BeforeValidator
from typing_extensions import Annotated


def _path_validator(value: Any) -> Path:
    if value is None:
        return None
    return Path(value)


def _expand_user_validator(p: Path) -> Path:
    if p is None:
        return None
    return p.expanduser()


def _directory_validator(p: Path) -> Path:
    if p is None or not p.is_dir():
        raise ValueError(f"{p} is not a directory")
    return p


def _ensure_exists_validator(p: Path) -> Path:
    if p is None:
        raise ValueError(f"Can't make None path")
    if not p.exists():
        try:
            p.mkdir(parents=True, exist_ok=True)
        except Exception as e:
            raise ValueError(f"make dir {p} yields error: {e}")
    return p


# Validators run bottom-up: str -> Path -> ~ expanded -> created -> checked
AutoCreateDirectoryPath = Annotated[
    Path,
    BeforeValidator(_directory_validator),
    BeforeValidator(_ensure_exists_validator),
    BeforeValidator(_expand_user_validator),
    BeforeValidator(_path_validator)
]
