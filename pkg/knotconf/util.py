import json
from typing import Any, Optional

from knotconf.errors import DomainError


TRUE_STRINGS = ("true", "yes", "on", "1")
FALSE_STRINGS = ("false", "no", "off", "0")


def str_to_bool(string: str) -> bool:
    key = string.strip().lower()
    if key in TRUE_STRINGS:
        return True
    if key in FALSE_STRINGS:
        return False

    raise DomainError(
        "'{}' is not a boolean, must be true or false".format(string)
    )


def str_to_int(string: str, key: str) -> int:
    try:
        return int(string.strip())
    except ValueError as error:
        raise DomainError(
            "'{}' must be an integer, got '{}'".format(key, string)
        ) from error


def optional_int(string: Optional[str], key: str) -> Optional[int]:
    if string is None or not string.strip():
        return None
    return str_to_int(string, key)


def to_json(document: Any) -> str:
    # Insertion order is kept so identical runs print identical documents.
    return json.dumps(document, indent=2, ensure_ascii=False)
