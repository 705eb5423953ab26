"""
Logging for odelin

Reports go to stdout, log records to stderr.
"""
import logging


# Log output format
LOG_FORMAT_CONSOLE = "%(asctime)s %(name)-20s %(levelname)-8s %(message)s"
LOG_FORMAT_DATE    = "%m-%d %H:%M"

LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def init_log(verbosity=0):
    """Initialise system logging

    :param int verbosity:   0 warnings, 1 info, 2 or more debug
    """
    level = LEVELS[min(max(verbosity, 0), len(LEVELS) - 1)]
    logging.basicConfig(level=level,
                        format=LOG_FORMAT_CONSOLE,
                        datefmt=LOG_FORMAT_DATE)
    logging.getLogger().setLevel(level)

    logger = logging.getLogger('odelin')
    logger.debug("Logging initialised")
