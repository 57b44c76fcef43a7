"""
Logging system for gwvirasoro.

Console logs go to stderr so that stdout stays reserved for reports.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import ClassVar

ROOT_LOGGER = "gwvirasoro"


class ColoredFormatter(logging.Formatter):
    """Formatter with colored level names for terminals."""

    COLORS: ClassVar[dict[str, str]] = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
        "RESET": "\033[0m",
    }

    def format(self, record: logging.LogRecord) -> str:
        levelname = record.levelname
        if levelname in self.COLORS:
            record = logging.makeLogRecord(record.__dict__)
            record.levelname = f"{self.COLORS[levelname]}{levelname}{self.COLORS['RESET']}"

        return super().format(record)


def setup_logger(
    name: str = ROOT_LOGGER,
    level: str = "WARNING",
    log_file: str | None = None,
    console_output: bool = True,
    max_file_size: int = 10 * 1024 * 1024,  # 10MB
    backup_count: int = 3,
) -> logging.Logger:
    """
    Sets up the application logger.

    Args:
        name: Logger name
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Optional path of a rotating log file
        console_output: Output logs to stderr
        max_file_size: Maximum size of log file before rotation
        backup_count: Number of backup files to keep

    Returns:
        Configured logger
    """
    numeric_level = getattr(logging, level.upper(), None)
    if not isinstance(numeric_level, int):
        raise ValueError(f"Unknown log level: {level}")

    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG if log_file else numeric_level)

    logger.handlers.clear()

    console_format = "%(asctime)s | %(levelname)8s | %(name)s | %(message)s"
    file_format = "%(asctime)s | %(levelname)8s | %(name)s | %(filename)s:%(lineno)d | %(message)s"

    if console_output:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(numeric_level)
        formatter: logging.Formatter = (
            ColoredFormatter(console_format) if sys.stderr.isatty() else logging.Formatter(console_format)
        )
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)

        file_handler = RotatingFileHandler(
            log_file, maxBytes=max_file_size, backupCount=backup_count, encoding="utf-8"
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(file_format))
        logger.addHandler(file_handler)

        logger.info(f"Logs are being saved to file: {log_file}")

    logger.propagate = False

    return logger


def get_logger(name: str | None = None) -> logging.Logger:
    """
    Returns a logger under the gwvirasoro namespace.

    Args:
        name: Logger name (if None, uses 'gwvirasoro')

    Returns:
        Logger
    """
    if name is None:
        name = ROOT_LOGGER

    if not name.startswith(ROOT_LOGGER) and "." not in name:
        name = f"{ROOT_LOGGER}.{name}"

    return logging.getLogger(name)


class ProgressLogger:
    """Progress logger for long degree-by-degree computations."""

    def __init__(self, logger: logging.Logger, total: int, description: str = "Progress"):
        """
        Args:
            logger: Logger for output
            total: Total number of steps
            description: Process description
        """
        self.logger = logger
        self.total = max(total, 1)
        self.description = description
        self.current = 0

    def update(self, amount: int = 1, detail: str = "") -> None:
        """
        Records finished steps.

        Args:
            amount: Number of finished steps
            detail: Short note about the last step
        """
        self.current += amount
        suffix = f" - {detail}" if detail else ""
        self.logger.info(f"{self.description}: {self.current}/{self.total}{suffix}")

    def finish(self) -> None:
        """Completes progress."""
        self.logger.info(f"{self.description}: completed ({self.current}/{self.total})")
