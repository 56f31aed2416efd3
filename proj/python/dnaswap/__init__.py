"""Entanglement-swapping base pairing simulator."""

import json

from ._core import (
    InvalidArgument,
    InvariantViolation,
    __version__,
    bell_state,
    complement,
    default_angles,
    encode,
    entanglement_entropy,
    lambda_of,
    modified_bell,
    pair,
    pairable,
    recognition_unitary,
    recognize,
    sector_support,
    weak_dephase,
)
from ._core import run_json as _run_json


def run(command, bases="", **options):
    """Run a harness command and return (report dict, all checks passed)."""
    text, ok = _run_json(command, bases, **options)
    return json.loads(text), ok


__all__ = [
    "InvalidArgument",
    "InvariantViolation",
    "__version__",
    "bell_state",
    "complement",
    "default_angles",
    "encode",
    "entanglement_entropy",
    "lambda_of",
    "modified_bell",
    "pair",
    "pairable",
    "recognition_unitary",
    "recognize",
    "run",
    "sector_support",
    "weak_dephase",
]
