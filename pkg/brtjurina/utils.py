import logging
import math
import sys
import time
from contextlib import contextmanager
from enum import Enum

from brtjurina.errors import InputError


LOGGER_NAME = 'brtjurina'


def configure_logging(log_path=None, level=logging.INFO):
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)
    formatter = logging.Formatter(
        fmt='%(asctime)s - %(levelname)s - %(message)s',
        datefmt='%d-%b-%y %H:%M:%S'
    )
    # results go to stdout, so the console handler writes to stderr
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    sh = logging.StreamHandler(sys.stderr)
    sh.setLevel(level)
    sh.setFormatter(formatter)
    logger.addHandler(sh)
    # Setup file logging as well
    if log_path is not None:
        fh = logging.FileHandler(log_path)
        fh.setLevel(logging.DEBUG)
        fh.setFormatter(formatter)
        logger.addHandler(fh)
    return logger


def get_logger(name=None):
    """Child logger of the package logger; silent until configured."""
    if name is None:
        return logging.getLogger(LOGGER_NAME)
    return logging.getLogger(f'{LOGGER_NAME}.{name}')


def sec2min(s):
    m = math.floor(s / 60)
    s -= m * 60
    return '%dm %ds' % (m, s)


@contextmanager
def log_elapsed(logger, what):
    """Log `what` together with the wall time spent inside the block."""
    start_time = time.time()
    yield
    logger.info(f'{what}, loop_time: {sec2min(time.time() - start_time)}')


def validate_value_in_enum(value, enum_cls: Enum):
    enum_values = [e.value for e in enum_cls]
    if value not in enum_values:
        raise InputError(f"{value} is not supported. "
                         f"Allowed values are: {', '.join(enum_values)}")
    return enum_cls(value)
