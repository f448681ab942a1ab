"""Logging setup for nahmscan runs and scan workers."""

import logging
import logging.handlers
import sys
import time
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
DEFAULT_LOG_FILE = Path("logs") / "nahmscan.log"


def _handlers(level: int, log_file: Path | None, console: bool) -> list[logging.Handler]:
    formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT)
    handlers: list[logging.Handler] = []
    if console:
        # stdout carries the reports
        handlers.append(logging.StreamHandler(sys.stderr))
    if log_file is not None:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(
            logging.handlers.RotatingFileHandler(
                filename=log_file,
                maxBytes=10 * 1024 * 1024,  # 10MB
                backupCount=5,
                encoding="utf-8",
            )
        )
    for handler in handlers:
        handler.setLevel(level)
        handler.setFormatter(formatter)
    return handlers


def setup_logging(
    log_level: str = "INFO",
    log_file: Path | None = None,
    enable_console: bool = True,
    enable_file: bool = False,
) -> None:
    """Configure the root logger for one nahmscan run.

    Calling it again replaces the handlers, so scan workers and tests can
    reconfigure freely.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Rotating log file; defaults to logs/nahmscan.log when file logging is on
        enable_console: Whether to log to stderr
        enable_file: Whether to log to file

    """
    level = logging.getLevelName(log_level.upper())
    if not isinstance(level, int):
        raise ValueError(f"unknown log level: {log_level!r}")
    if enable_file and log_file is None:
        log_file = DEFAULT_LOG_FILE

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
        handler.close()
    for handler in _handlers(level, log_file if enable_file else None, enable_console):
        root_logger.addHandler(handler)

    logging.getLogger(__name__).debug(
        f"Logging at {log_level.upper()}, file: {log_file if enable_file else 'off'}"
    )


def get_logger(name: str) -> logging.Logger:
    """Logger for a module, typically called with __name__."""
    return logging.getLogger(name)


def current_level_name() -> str:
    """Name of the root logger's level, for handing on to worker processes."""
    return logging.getLevelName(logging.getLogger().level)


class LoggerMixin:
    """Gives long-running classes a ``self.logger`` named after the class."""

    @property
    def logger(self) -> logging.Logger:
        return get_logger(f"{self.__class__.__module__}.{self.__class__.__name__}")


@contextmanager
def log_duration(logger: logging.Logger, label: str) -> Iterator[None]:
    """Log how long the block took at INFO."""
    start = time.perf_counter()
    try:
        yield
    finally:
        logger.info(f"{label} took {time.perf_counter() - start:.2f}s")


def log_exception(logger: logging.Logger, exception: Exception, context: str = "") -> None:
    """Log an exception with traceback before it is re-raised as a nahmscan error.

    Args:
        logger: Logger instance to use
        exception: Exception to log
        context: What was being attempted, e.g. "reading series from out.txt"

    """
    message = f"Failed {context}" if context else "Exception occurred"
    logger.error(f"{message}: {type(exception).__name__}: {exception}", exc_info=True)
