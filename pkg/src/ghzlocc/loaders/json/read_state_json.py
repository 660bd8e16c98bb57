from __future__ import annotations

import dataclasses
import json
from pathlib import Path
from typing import List, Union

import numpy as np

from ghzlocc.config import DEFAULT_TOLERANCES
from ghzlocc.errors import ParseError
from ghzlocc.loaders.json.json_encoding import dumps
from ghzlocc.loaders.json.state_loading_config import StateLoadingConfig
from ghzlocc.state.pure_state import PureState3Q

PathLike = Union[str, Path]


def read_state(
    path: PathLike,
    norm_tolerance: float = DEFAULT_TOLERANCES.norm,
    renormalize: bool = False,
) -> PureState3Q:
    """Load a state from a JSON file of the form ``{"amps": [[re, im], ... 8 entries]}``.

    Args:
        path (str): the path of the state file
        norm_tolerance (float): allowed deviation of the norm of the amplitudes from 1
        renormalize (bool): if True, any nonzero amplitudes are scaled to unit norm
    Returns:
        The state loaded from the file

    Raises:
        ParseError: if the file is not valid JSON or does not hold 8 amplitudes
        NotNormalized: if the amplitudes are not normalized and ``renormalize`` is False
    """
    kwd_args = locals().copy()
    config_args = {field.name: kwd_args[field.name] for field in dataclasses.fields(StateLoadingConfig)}
    config = StateLoadingConfig(**config_args)
    return read_state_text(Path(path).read_text(encoding="utf-8"), config)


def read_state_text(text: str, config: StateLoadingConfig | None = None) -> PureState3Q:
    config = StateLoadingConfig() if config is None else config
    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise ParseError(error.msg, line=error.lineno, column=error.colno) from error
    if not isinstance(document, dict) or "amps" not in document:
        raise ParseError('State JSON must be an object with an "amps" field')
    amps = _parse_amplitudes(document["amps"])
    tolerances = DEFAULT_TOLERANCES.with_overrides(norm=config.norm_tolerance)
    return PureState3Q.from_amplitudes(amps, tolerances, renormalize=config.renormalize)


def _parse_amplitudes(entries) -> List[complex]:
    if not isinstance(entries, list) or len(entries) != 8:
        raise ParseError('"amps" must be a list of 8 amplitudes')
    amps = []
    for index, entry in enumerate(entries):
        if isinstance(entry, (int, float)) and not isinstance(entry, bool):
            amps.append(complex(entry))
        elif (
            isinstance(entry, list)
            and len(entry) == 2
            and all(isinstance(part, (int, float)) and not isinstance(part, bool) for part in entry)
        ):
            amps.append(complex(entry[0], entry[1]))
        else:
            raise ParseError(f"Amplitude {index} must be a number or a [re, im] pair, got {entry!r}")
    if not np.all(np.isfinite(amps)):
        raise ParseError("Amplitudes must be finite")
    return amps


def write_state(state: PureState3Q, path: PathLike):
    """Writes a state in the format read by :func:`read_state`"""
    Path(path).write_text(dumps(state) + "\n", encoding="utf-8")
