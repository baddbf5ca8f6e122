import logging
import os
import sys
from loguru import logger

from config import LOG_LEVEL, LOG_TO_CONSOLE, LOG_TO_FILE

LOG_FORMAT = "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"


def remove_default_loggers():
    """Remove default loggers from root logger."""
    root_logger = logging.getLogger()
    if root_logger.hasHandlers():
        root_logger.handlers.clear()


def init_loguru_logger(level: str = LOG_LEVEL):
    """Initialize and configure loguru logger."""

    def get_log_filename():
        return f"log/app.log"

    logger.remove()

    # Add file logger if LOG_TO_FILE is True
    if LOG_TO_FILE:
        log_file = get_log_filename()
        os.makedirs(os.path.dirname(log_file), exist_ok=True)
        logger.add(
            log_file,
            level=level,
            rotation="10 MB",
            retention="1 week",
            compression="zip",
            format=LOG_FORMAT,
            backtrace=True,
            diagnose=True,
        )

    # Add console logger if LOG_TO_CONSOLE is True
    if LOG_TO_CONSOLE:
        logger.add(
            sys.stderr,
            level=level,
            format=LOG_FORMAT,
            backtrace=True,
            diagnose=True,
        )


remove_default_loggers()
init_loguru_logger()
