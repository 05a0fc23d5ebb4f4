"""Shared configuration file: INI sections for the tunables of each stage.

Command-line flags override file values; unknown sections or keys are rejected
by name so typos do not silently fall back to defaults.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from stilo.align import AlignParams, BeadKind
from stilo.errors import DataError

_KNOWN_KEYS = {
    "align": {
        "c",
        "s2",
        "prior_1_1",
        "prior_1_0",
        "prior_0_1",
        "prior_2_1",
        "prior_1_2",
        "prior_2_2",
    },
    "filter": {"c_param", "seed"},
    "style": {"lexicon"},
    "datasets": {"min_tokens", "max_tokens", "validation_fraction", "seed"},
}

_PRIOR_KEYS = {
    "prior_1_1": BeadKind.B_1_1,
    "prior_1_0": BeadKind.B_1_0,
    "prior_0_1": BeadKind.B_0_1,
    "prior_2_1": BeadKind.B_2_1,
    "prior_1_2": BeadKind.B_1_2,
    "prior_2_2": BeadKind.B_2_2,
}


@dataclass
class Config:
    align: AlignParams = field(default_factory=AlignParams)
    filter_c: float = 1.0
    filter_seed: int = 0
    style_lexicon: str | None = None
    min_tokens: int = 3
    max_tokens: int = 128
    validation_fraction: float = 0.05
    datasets_seed: int = 0


def _float(section: str, key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError as exc:
        raise DataError(f"config [{section}] {key}: not a number: {value!r}") from exc


def _int(section: str, key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise DataError(f"config [{section}] {key}: not an integer: {value!r}") from exc


def load_config(path: str | Path) -> Config:
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keep key case
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except configparser.Error as exc:
        raise DataError(f"{path}: cannot parse config: {exc}") from exc
    except OSError as exc:
        raise DataError(f"{path}: cannot read config: {exc}") from exc

    config = Config()
    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise DataError(f"{path}: unknown config section [{section}]")
        for key, value in parser.items(section):
            if key not in _KNOWN_KEYS[section]:
                raise DataError(f"{path}: unknown key {key!r} in section [{section}]")
            if section == "align":
                if key == "c":
                    config.align = _replace_align(config.align, c=_float(section, key, value))
                elif key == "s2":
                    config.align = _replace_align(config.align, s2=_float(section, key, value))
                else:
                    priors = dict(config.align.priors)
                    priors[_PRIOR_KEYS[key]] = _float(section, key, value)
                    config.align = _replace_align(config.align, priors=priors)
            elif section == "filter":
                if key == "c_param":
                    config.filter_c = _float(section, key, value)
                else:
                    config.filter_seed = _int(section, key, value)
            elif section == "style":
                config.style_lexicon = value
            elif section == "datasets":
                if key == "min_tokens":
                    config.min_tokens = _int(section, key, value)
                elif key == "max_tokens":
                    config.max_tokens = _int(section, key, value)
                elif key == "validation_fraction":
                    config.validation_fraction = _float(section, key, value)
                else:
                    config.datasets_seed = _int(section, key, value)
    return config


def _replace_align(params: AlignParams, **updates) -> AlignParams:
    fields = {"priors": dict(params.priors), "c": params.c, "s2": params.s2}
    fields.update(updates)
    return AlignParams(**fields)
