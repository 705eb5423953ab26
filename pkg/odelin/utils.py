"""
Common utilities for the odelin package
"""
import datetime
import logging
import time

# Logging
logger = logging.getLogger(__name__)

# Datetime format used for conversion
DATETIME_FORMAT = "%Y/%m/%d %H:%M:%S"


def str2date(date_string):
    """Convert a datetime string from the common format
    YYYY/mm/dd HH:MM:SS to python Datetime
    :returns: Date string as a Datetime object, or None if there
                was conversion errors
    """
    try:
        return datetime.datetime.strptime(date_string, DATETIME_FORMAT)
    except (TypeError, ValueError) as error:
        logger.warning("Invalid date %r: %s", date_string, error)
        return None


def date2str(date):
    """Convert a datetime object into the common format
     as a string: YYYY/mm/dd HH:MM:SS
     :returns: Date as a string or None if there was conversion errors
    """
    try:
        return date.strftime(DATETIME_FORMAT)
    except AttributeError as error:
        logger.warning("Invalid date %r: %s", date, error)
        return None


def split_names(text):
    """Comma separated names as a tuple, empty for None or ''"""
    if not text:
        return ()
    return tuple(name.strip() for name in text.split(',') if name.strip())


def join_names(names):
    return ",".join(names)


class Stopwatch:
    """Wall clock timer usable as a context manager"""

    def __init__(self):
        self.start = None
        self.stop = None

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc_info):
        self.stop = time.perf_counter()
        return False

    @property
    def elapsed_ms(self):
        end = self.stop if self.stop is not None else time.perf_counter()
        return int(round((end - self.start) * 1000))
