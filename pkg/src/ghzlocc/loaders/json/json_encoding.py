"""Conversion of results to JSON.

Complex numbers become ``[re, im]`` pairs, numpy values become Python numbers and lists, enums
become their values and objects with a ``to_dict`` method are converted through it. Floats keep
Python's shortest round-trip representation; non-finite floats become ``null``.
"""

from __future__ import annotations

import json
import math
from enum import Enum
from typing import Any

import numpy as np
import pandas as pd

from ghzlocc.state.pure_state import PureState3Q


def to_jsonable(value: Any) -> Any:
    """Recursively converts a value to types the ``json`` module writes"""
    if isinstance(value, Enum):
        return to_jsonable(value.value)
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, np.bool_):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, (complex, np.complexfloating)):
        return [to_jsonable(value.real), to_jsonable(value.imag)]
    if isinstance(value, PureState3Q):
        return {"amps": to_jsonable(value.amps)}
    if isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, pd.DataFrame):
        return to_jsonable(value.to_dict(orient="records"))
    if isinstance(value, dict):
        return {str(to_jsonable(key)): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def dumps(value: Any, indent: int | None = 2) -> str:
    """Serializes a result to JSON text"""
    return json.dumps(to_jsonable(value), indent=indent, allow_nan=False)
