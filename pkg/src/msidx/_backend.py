"""Kernel selection: the compiled extension when importable, else pure Python.

MSIDX_BACKEND=python forces the fallback; MSIDX_BACKEND=cython makes a
missing extension an error.
"""

import importlib
import os

from . import _pycore


def load(name: str):
    if name == "python":
        return _pycore
    if name == "cython":
        return importlib.import_module("msidx._ccore")
    raise ValueError(f"unknown backend {name!r}")


def available() -> list[str]:
    names = ["python"]
    try:
        load("cython")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


_choice = os.environ.get("MSIDX_BACKEND", "").lower()
if _choice:
    core = load(_choice)
else:
    try:
        core = load("cython")
    except ImportError:
        core = _pycore

NAME = "python" if core is _pycore else "cython"
