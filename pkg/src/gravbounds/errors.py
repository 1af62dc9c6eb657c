"""Exception types shared across the package."""

from __future__ import annotations

import math


class BoundsError(Exception):
    """Base class for all errors raised by gravbounds."""


class DomainError(BoundsError, ValueError):
    """An input lies outside the domain where a formula is valid.

    ``constraint`` names the violated condition (e.g. ``"γv² = 2.5 ≥ 1"``) and
    ``margin`` is the signed distance of the coupling to the domain edge; it is
    non-positive whenever this error is raised for a coupling constraint.
    """

    def __init__(self, constraint: str, margin: float = math.nan):
        super().__init__(constraint)
        self.constraint = constraint
        self.margin = margin


class NoMinimumError(BoundsError):
    """The objective has no interior minimum on (0, ∞)."""

    def __init__(self, message: str, constraint: str | None = None, margin: float = math.nan):
        super().__init__(message)
        self.constraint = constraint or message
        self.margin = margin
