"""Colored, non-propagating loggers shared by every plantedsdp module."""

import functools
import logging
import time
from collections.abc import Callable
from typing import Any, TypeVar

import coloredlogs

F = TypeVar("F", bound=Callable[..., Any])

LOG_FORMAT = "%(levelname)s: %(name)s || %(message)s"

LEVEL_STYLES: dict[str, dict[str, Any]] = {
    "debug": {"color": "green"},
    "info": {"color": "blue"},
    "warning": {"color": "yellow", "bold": True},
    "error": {"color": "red", "bold": True},
    "critical": {"color": "red", "bold": True, "background": "white"},
}

FIELD_STYLES: dict[str, dict[str, Any]] = {
    "levelname": {"color": "magenta", "bold": True},
    "name": {"color": "cyan"},
}

# names handed out by setup_logger, so the CLI can retune them together
_PACKAGE_LOGGERS: set[str] = set()


def setup_logger(name: str, level: int = logging.INFO) -> logging.Logger:
    """
    Return the logger `name`, installing a colored handler on first use.

    Parameters
    ----------
    name : str
        Logger name, conventionally the module's role (e.g. `"SdpSolver"`).
    level : int, optional
        Initial level, by default `logging.INFO`.

    Returns
    -------
    logging.Logger
        A logger that writes `LEVEL: name || message` and never propagates
        to the root logger. Calling twice with one name does not stack
        handlers.
    """
    logger = logging.getLogger(name)
    if not logger.handlers:
        logger.setLevel(level)
        coloredlogs.install(
            level=level,
            logger=logger,
            fmt=LOG_FORMAT,
            level_styles=LEVEL_STYLES,
            field_styles=FIELD_STYLES,
        )
    logger.propagate = False
    _PACKAGE_LOGGERS.add(name)
    return logger


def set_package_log_level(level: int) -> None:
    """Move every logger created through `setup_logger` to `level`."""
    for name in _PACKAGE_LOGGERS:
        logger = logging.getLogger(name)
        logger.setLevel(level)
        for handler in logger.handlers:
            handler.setLevel(level)


def log_start_end(
    func: F | None = None, *, logger: logging.Logger | None = None
) -> F | Callable[[F], F]:
    """
    Log START, END and EXCEPTION lines with wall time around a call.

    Usable bare (`@log_start_end`) or with a logger
    (`@log_start_end(logger=logger)`). Without one, the logger of the
    function's module is used. Exceptions are logged with their traceback
    and re-raised untouched.

    Examples
    --------
    ```py
    @log_start_end(logger=logger)
    def solve(problem, options): ...
    ```
    """

    def decorator(inner: F) -> F:
        log = logger or logging.getLogger(inner.__module__)

        @functools.wraps(inner)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            started = time.perf_counter()
            log.info("START: %s", inner.__name__)
            try:
                result = inner(*args, **kwargs)
            except Exception:
                log.exception(
                    "EXCEPTION in %s after %.4fs",
                    inner.__name__,
                    time.perf_counter() - started,
                )
                raise
            log.info(
                "END: %s in %.4fs",
                inner.__name__,
                time.perf_counter() - started,
            )
            return result

        return wrapper  # type: ignore[return-value]

    if func is None:
        return decorator
    return decorator(func)
