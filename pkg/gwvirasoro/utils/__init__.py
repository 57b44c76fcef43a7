"""
Utilities for gwvirasoro.

Contains helper modules for configuration, logging, rational parsing and
exact linear algebra.
"""

from .config import RunConfig, TruncationConfig
from .linalg import invert_matrix, solve_unique
from .logger import ColoredFormatter, ProgressLogger, get_logger, setup_logger
from .rational import format_scalar, parse_index, parse_scalar

__all__ = [
    "ColoredFormatter",
    "ProgressLogger",
    "RunConfig",
    "TruncationConfig",
    "format_scalar",
    "get_logger",
    "invert_matrix",
    "parse_index",
    "parse_scalar",
    "setup_logger",
    "solve_unique",
]
