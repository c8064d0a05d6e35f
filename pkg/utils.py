# utils.py
# Small helpers for reading configs and writing run artifacts.

from __future__ import annotations

import json
import math
import sys
from pathlib import Path
from typing import Any

import pandas as pd

CSV_FLOAT_FORMAT = "%.17g"


def read_json_source(source: str | Path) -> Any:
    """
    Read a JSON document from a file path, or from stdin when source is "-".

    Raises OSError for unreadable files and json.JSONDecodeError for bad JSON.
    """
    if str(source) == "-":
        return json.loads(sys.stdin.read())
    with open(source, "r", encoding="utf-8") as handle:
        return json.load(handle)


def finite_or_text(value: Any) -> Any:
    """Replace non-finite floats (recursively) by their text so JSON stays strict."""
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {key: finite_or_text(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [finite_or_text(item) for item in value]
    return value


def write_json(path: str | Path, payload: Any) -> Path:
    path = Path(path)
    path.write_text(json.dumps(finite_or_text(payload), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def write_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    return path
