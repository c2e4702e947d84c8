from functools import lru_cache
from functools import partial
from pathlib import Path
from typing import Type

import jsonschema
import yaml

from ncgroups.exceptions import CayleyTableValidationException
from ncgroups.exceptions import DocumentValidationException
from ncgroups.exceptions import SettingsValidationException
from ncgroups.types import JSONMapping
from ncgroups.types import JSONSchema

SCHEMAS_DIR = Path(__file__).parent / "schemas"


@lru_cache(maxsize=None)
def load_schema(name: str) -> JSONSchema:
    with open(SCHEMAS_DIR / f"{name}.yml") as f:
        return yaml.safe_load(f)


def jsonschema_validate_with_custom_error(
    instance: JSONMapping,
    schema_name: str,
    exc_type: Type[DocumentValidationException],
) -> None:
    try:
        jsonschema.validate(instance, load_schema(schema_name))
    except jsonschema.ValidationError as e:
        raise exc_type.create_from(e)


validate_cayley_document = partial(
    jsonschema_validate_with_custom_error,
    schema_name="cayley_table",
    exc_type=CayleyTableValidationException,
)

validate_settings_document = partial(
    jsonschema_validate_with_custom_error,
    schema_name="settings",
    exc_type=SettingsValidationException,
)
