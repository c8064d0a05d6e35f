# commands/__init__.py
# One module per CLI command, each exposing execute(config, out_dir). Modules
# load on first use, so a symbolic check never imports the propagator.

from __future__ import annotations

import sys
from importlib import import_module
from types import ModuleType

from errors import LabError
from schemas import COMMANDS

SUITE = "suite"

__all__ = [*COMMANDS, SUITE, "UnknownCommandError", "command_module"]


class UnknownCommandError(LabError):
    """Raised when a run names a command with no module behind it."""


def _load(name: str) -> ModuleType:
    module = import_module(f"{__name__}.{name}")
    setattr(sys.modules[__name__], name, module)
    return module


def command_module(name: str) -> ModuleType:
    """The module that executes ``name``."""
    if name not in COMMANDS:
        raise UnknownCommandError(f"no command named {name!r}; known: {', '.join(COMMANDS)}")
    module = _load(name)
    if not callable(getattr(module, "execute", None)):
        raise UnknownCommandError(f"command module {module.__name__} has no execute()")
    return module


def __getattr__(name: str) -> ModuleType:
    if name in COMMANDS or name == SUITE:
        return _load(name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
