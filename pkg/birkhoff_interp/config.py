"""Config module for ``birkhoff-interp``.

Solver limits, user directories and logging setup.
"""

import logging
import os
from pathlib import Path

import platformdirs
from rich.console import Console
from rich.logging import RichHandler

APP_NAME = "birkhoff-interp"

DEFAULT_EXTRA_DEGREE_PER_CONDITION = 8

REPRODUCER_DIR_ENV = "BIRKHOFF_INTERP_REPRODUCER_DIR"
DEBUG_ENV = "BIRKHOFF_INTERP_DEBUG"

_TRUTHY = {"1", "yes", "true", "on", "enabled"}


def default_degree_cap(max_order: int, size: int) -> int:
    """Largest degree a working monomial may reach before giving up.

    Args:
        max_order: Highest derivative order among the conditions.
        size: Number of conditions N.

    Returns:
        ``max_order + N + DEFAULT_EXTRA_DEGREE_PER_CONDITION * N``.
    """
    return max_order + size + DEFAULT_EXTRA_DEGREE_PER_CONDITION * size


def env_flag(name: str) -> bool:
    """Whether the environment variable ``name`` is set to a truthy value."""
    return os.getenv(name, default="0").lower() in _TRUTHY


def reproducer_dir(override: Path | None = None) -> Path:
    """Returns (and creates) the directory for failing random instances."""
    if override is not None:
        target = Path(override)
    elif env_dir := os.getenv(REPRODUCER_DIR_ENV):
        target = Path(env_dir)
    else:
        target = platformdirs.user_cache_path(appname=APP_NAME) / "reproducers"
    target.mkdir(parents=True, exist_ok=True)
    return target


def configure_logging(verbose: bool = False) -> logging.Logger:
    """Sends the package's log records to stderr through ``rich``.

    Calling this twice replaces the handler rather than adding a second one.
    """
    logger = logging.getLogger("birkhoff_interp")
    level = logging.DEBUG if verbose or env_flag(DEBUG_ENV) else logging.WARNING
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level)
    return logger
