"""Truncated power series and phase-derivative jets."""

from .jet import PhaseJet, expi
from .kernels import BACKEND
from .truncated import (
    TruncatedSeries,
    extract_derivative,
    extract_from_prefactored,
    series_exp,
    series_mul,
    taylor_derivative,
)

__all__ = [
    "BACKEND",
    "PhaseJet",
    "TruncatedSeries",
    "expi",
    "extract_derivative",
    "extract_from_prefactored",
    "series_exp",
    "series_mul",
    "taylor_derivative",
]
