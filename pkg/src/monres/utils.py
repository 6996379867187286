"""utils.py - configuration lookups and logging setup."""
import logging
import os
import sys
from typing import Any

import structlog
from typer.models import OptionInfo

DEFAULT_MAX_T = 24
BITMASK_WIDTH = 63
DEFAULT_PRIME = 32003
MAX_T_ENVVAR = "MONRES_MAX_T"
PRIME_ENVVAR = "MONRES_PRIME"

_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def resolve(arg: Any) -> Any:
    """Unwrap typer defaults when a command function is called directly from Python."""
    if isinstance(arg, OptionInfo):
        return arg.default
    else:
        return arg


def lattice_cap() -> int:
    """Largest generator count allowed for full subset-lattice enumeration.

    ``MONRES_MAX_T`` overrides the default of 24; the value is clamped to the
    63-bit bitmask width. Unparseable values fall back to the default.
    """
    raw = os.environ.get(MAX_T_ENVVAR)
    if raw is None:
        return DEFAULT_MAX_T
    try:
        value = int(raw)
    except ValueError:
        structlog.get_logger().warning("ignoring malformed cap", envvar=MAX_T_ENVVAR, value=raw)
        return DEFAULT_MAX_T
    return max(1, min(value, BITMASK_WIDTH))


def _stderr_logger(*args: Any) -> structlog.PrintLogger:
    return structlog.PrintLogger(file=sys.stderr)


def configure_logging(verbosity: int = 0) -> None:
    """Send structlog output to stderr, filtered by verbosity (0 warn, 1 info, 2+ debug)."""
    level = _LEVELS[min(max(verbosity, 0), len(_LEVELS) - 1)]
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="%H:%M:%S"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )


def configure_default_logging() -> None:
    """WARNING-level stderr logging for library callers, unless structlog is already configured."""
    if not structlog.is_configured():
        configure_logging(0)
