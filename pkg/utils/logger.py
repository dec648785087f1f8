import logging
import os
from logging.handlers import RotatingFileHandler
from pathlib import Path


def get_custom_logger(name: str, log_dir: str | None = None, level=None):
    log_dir = log_dir or os.getenv("ECD_LOG_DIR", "logs")
    if level is None:
        level = getattr(logging, os.getenv("ECD_LOG_LEVEL", "INFO").upper(), logging.INFO)
    Path(log_dir).mkdir(parents=True, exist_ok=True)
    log_path = Path(log_dir) / f"{name}.log"
    logger = logging.getLogger(name)
    logger.setLevel(level)
    if not logger.handlers:
        ch = logging.StreamHandler()
        ch.setLevel(level)
        fmt = logging.Formatter("%(asctime)s | %(levelname)s | %(name)s | %(message)s")
        ch.setFormatter(fmt)

        fh = RotatingFileHandler(log_path, maxBytes=2_000_000, backupCount=3)
        fh.setLevel(level)
        fh.setFormatter(fmt)

        logger.addHandler(ch)
        logger.addHandler(fh)
    return logger


def set_stream_level(level) -> None:
    """Raise or lower console verbosity on every logger created so far (used by --quiet)."""
    for logger in logging.Logger.manager.loggerDict.values():
        if not isinstance(logger, logging.Logger):
            continue
        for handler in logger.handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, RotatingFileHandler):
                handler.setLevel(level)
