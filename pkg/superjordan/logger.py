import logging

from .config import LOG_LEVEL, LOG_PATH

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"

_package_logger = logging.getLogger("superjordan")

if not _package_logger.handlers:
    if LOG_PATH:
        _handler = logging.FileHandler(LOG_PATH)
    else:
        _handler = logging.StreamHandler()
    _handler.setFormatter(logging.Formatter(LOG_FORMAT))
    _package_logger.addHandler(_handler)
    _package_logger.setLevel(getattr(logging, LOG_LEVEL, logging.WARNING))
    _package_logger.propagate = False


def get_logger(name: str) -> logging.Logger:
    """Child logger of the package logger, e.g. get_logger(__name__)."""
    if not name.startswith("superjordan"):
        name = f"superjordan.{name}"
    return logging.getLogger(name)


logger = get_logger(__name__)
