"""Certified heights, Mahler measures and linear-form bounds."""

from ._core import *  # noqa: F401,F403
from ._core import Ball, Error, ParseError, DomainError, HypothesisViolation, PrecisionBudgetExceeded

__all__ = [name for name in dir() if not name.startswith("_")]
