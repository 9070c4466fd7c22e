"""Finite simplicial sets, subdivision, Ex, Kan checks, localization, collars and movies."""

from ._sskit import *  # noqa: F401,F403
from ._sskit import Error, ParseError, BudgetExceeded, cli

__version__ = "0.1.0"
