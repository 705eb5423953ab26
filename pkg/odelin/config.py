"""
Config reader

Sections::

    [limits]    max_branches, max_terms, max_steps
    [series]    order, max_points
    [database]  url
    [server]    bind, port, debug
"""
from configparser import ConfigParser, NoSectionError, ParsingError

from odelin.thomas import (DEFAULT_MAX_BRANCHES, DEFAULT_MAX_STEPS, DEFAULT_MAX_TERMS,
                           DecompositionLimits)

# Defaults
DEFAULTS = {
    'limits': {
        'max_branches': str(DEFAULT_MAX_BRANCHES),
        'max_terms': str(DEFAULT_MAX_TERMS),
        'max_steps': str(DEFAULT_MAX_STEPS),
    },
    'series': {
        'max_points': '64',
    },
    'database': {
        'url': 'sqlite:///odelin.db',
    },
    'server': {
        'bind': '127.0.0.1',
        'port': '8080',
        'debug': 'false',
    },
}


class SiteConfig(ConfigParser):
    """Configuration options of the tool and the service.
    Raises exceptions if the required sections are missing
    """
    required_sections = ['limits']

    @classmethod
    def defaults(cls):
        """Configuration holding the built-in defaults only"""
        conf = cls()
        conf.read_dict(DEFAULTS)
        return conf

    @classmethod
    def from_file(cls, filename):
        parsed = ConfigParser()
        if not parsed.read([filename]):
            raise ParsingError("Failed to parse file: %s" % filename)

        # Check sections
        for section in cls.required_sections:
            if not parsed.has_section(section):
                raise NoSectionError(section)

        conf = cls.defaults()
        conf.read_dict(parsed)
        return conf

    def limits(self, max_branches=None, max_terms=None):
        """Decomposition limits, command line values first"""
        return DecompositionLimits(
            max_branches=max_branches or self.getint('limits', 'max_branches'),
            max_terms=max_terms or self.getint('limits', 'max_terms'),
            max_steps=self.getint('limits', 'max_steps'))

    def series_order(self, order=None):
        if order is not None:
            return order
        return self.getint('series', 'order', fallback=None)

    @property
    def max_points(self):
        return self.getint('series', 'max_points')
