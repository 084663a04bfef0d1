"""Kernel backend selection.

The compiled extension is preferred; the pure-Python twin is used when the
extension is missing or ``ORTHOLAB_PURE_PYTHON`` is set to a non-empty value.
"""
from __future__ import annotations

import importlib
import os

from . import _pykernels


def load(name: str):
    """Return the kernel module called ``"compiled"`` or ``"python"``."""
    if name == "python":
        return _pykernels
    if name == "compiled":
        return importlib.import_module("ortholab._kernels")
    raise ValueError(f"unknown backend {name!r}")


def compiled_available() -> bool:
    try:
        load("compiled")
    except ImportError:
        return False
    return True


if os.environ.get("ORTHOLAB_PURE_PYTHON"):
    kernels = _pykernels
else:
    try:
        kernels = load("compiled")
    except ImportError:
        kernels = _pykernels

BACKEND = kernels.NAME
