from dataclasses import replace
from pathlib import Path
from typing import Any
from typing import Optional
from typing import Union

import yaml
from svarog import forge

from ncgroups.types import DEFAULT_SETTINGS
from ncgroups.types import JSONMapping
from ncgroups.types import Settings
from ncgroups.validation import validate_settings_document


def load_settings(source: Union[Path, JSONMapping, None]) -> Settings:
    """
    Build :class:`Settings` from a YAML file or an already parsed mapping.
    Keys are kebab-case (``max-order: 128``); missing keys keep their defaults.
    """
    if source is None:
        return DEFAULT_SETTINGS

    if isinstance(source, Path):
        with open(source) as f:
            data = yaml.safe_load(f) or {}
    else:
        data = source

    validate_settings_document(data)
    return forge(Settings, data)


def override_settings(settings: Settings, **overrides: Optional[Any]) -> Settings:
    """Replace the fields given as non-``None`` keyword arguments."""
    return replace(
        settings, **{key: val for key, val in overrides.items() if val is not None}
    )
