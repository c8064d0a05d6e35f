# errors.py
# Root of the lab's exception hierarchy. Packages subclass LabError next to
# the code that raises the specific failure.

from __future__ import annotations


class LabError(RuntimeError):
    """Base error for every failure raised by the lab."""


class SettingsError(LabError):
    """Raised when an environment override cannot be parsed."""
