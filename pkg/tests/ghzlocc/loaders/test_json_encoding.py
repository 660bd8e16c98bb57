import json

import numpy as np
import pandas as pd
import pytest

from ghzlocc.core.invariants import Im6Sign, compute_invariants
from ghzlocc.loaders import dumps, to_jsonable
from ghzlocc.state import Party


def test_scalars():
    assert to_jsonable(np.float64(0.1)) == 0.1
    assert to_jsonable(np.int64(3)) == 3
    assert to_jsonable(np.bool_(True)) is True
    assert to_jsonable(1 + 2j) == [1.0, 2.0]
    assert to_jsonable(float("nan")) is None
    assert to_jsonable(np.inf) is None
    assert to_jsonable(Party.B) == "B"
    assert to_jsonable(Im6Sign.NEGATIVE) == "-"


def test_containers():
    value = {Party.A: np.array([1j, 2.0]), "rows": pd.DataFrame({"x": [0.5], "y": [np.nan]})}
    assert to_jsonable(value) == {"A": [[0.0, 1.0], [2.0, 0.0]], "rows": [{"x": 0.5, "y": None}]}


def test_objects_with_to_dict(ghz):
    assert to_jsonable(compute_invariants(ghz)) == to_jsonable(compute_invariants(ghz).to_dict())
    assert len(to_jsonable(ghz)["amps"]) == 8


def test_unsupported_object():
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_dumps_keeps_shortest_floats():
    text = dumps({"value": 0.1, "missing": float("nan")}, indent=None)
    assert text == '{"value": 0.1, "missing": null}'
    assert json.loads(dumps([1 / 3]))[0] == 1 / 3
