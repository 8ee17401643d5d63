"""Divergences on the positive definite cone, their preservers and order probes."""

from ._core import *  # noqa: F401,F403
from ._core import (
    ConsistencyError,
    ConvergenceError,
    DimensionError,
    DomainError,
    Error,
    ParseError,
    PreconditionError,
)

__version__ = "0.1.0"
