"""
Report archive database settings
"""
import contextlib
import logging

from sqlalchemy import DateTime, create_engine
from sqlalchemy.orm import close_all_sessions, sessionmaker

from odelin import utils

# Logging
logger = logging.getLogger(__name__)

# Defaults
DEFAULT_URL = 'sqlite:///odelin.db'

# Global database objects
engine = None
Session = None


def init_db(config=None, url=None):
    """Initialise the database

    :param config:  SiteConfig supplying ``[database] url``
    :param str url: Database URL, overrides the config
    """
    global engine, Session

    if url is None:
        if config is None:
            url = DEFAULT_URL
        else:
            url = config.get('database', 'url', fallback=DEFAULT_URL)

    logger.info("Database URL: %s", url)

    # Cleanup if called multiple times
    if Session is not None:
        close_all_sessions()
    if engine is not None:
        engine.dispose()

    engine = create_engine(url)
    Session = sessionmaker(bind=engine)

    # Create all database tables
    from odelin.db.models import Base
    Base.metadata.create_all(engine)


@contextlib.contextmanager
def open_session():
    """
    Handles connections to the database
    """
    if Session is None:
        init_db()

    logger.debug("Session opened")
    session = Session()
    try:
        yield session
        session.commit()
    except Exception as error:
        session.rollback()
        logger.exception("Exception: %s", error)
        raise
    finally:
        session.close()


def to_dict(record):
    """
    Converts a database record into a dictionary
    :param record:  Database record
    :return:        Dictionary key=column value=value
    """
    rdict = {}
    for column in record.__table__.columns:
        value = getattr(record, column.name)

        # Convert datetime string
        if isinstance(column.type, DateTime):
            value = utils.date2str(value)

        # Comma separated names as a list
        if column.info.get('names'):
            value = list(utils.split_names(value))

        rdict[column.name] = value

    return rdict
