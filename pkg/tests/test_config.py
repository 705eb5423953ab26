from configparser import NoSectionError, ParsingError

import pytest

from odelin.config import SiteConfig
from odelin.thomas import DecompositionLimits


def write(tmp_path, text):
    path = tmp_path / 'odelin.conf'
    path.write_text(text)
    return str(path)


def test_defaults():
    config = SiteConfig.defaults()
    assert config.limits() == DecompositionLimits()
    assert config.series_order() is None
    assert config.max_points == 64
    assert config.get('database', 'url') == 'sqlite:///odelin.db'


def test_command_line_overrides():
    config = SiteConfig.defaults()
    assert config.limits(max_branches=3).max_branches == 3
    assert config.limits(max_terms=40).max_terms == 40
    assert config.series_order(7) == 7


def test_file_overrides_defaults(tmp_path):
    config = SiteConfig.from_file(write(tmp_path, "[limits]\nmax_branches = 20\n\n"
                                                  "[series]\norder = 5\n"))
    assert config.limits().max_branches == 20
    assert config.limits().max_terms == DecompositionLimits().max_terms
    assert config.series_order() == 5
    assert config.max_points == 64
    assert config.getint('server', 'port') == 8080


def test_missing_file(tmp_path):
    with pytest.raises(ParsingError):
        SiteConfig.from_file(str(tmp_path / 'missing.conf'))


def test_missing_section(tmp_path):
    with pytest.raises(NoSectionError):
        SiteConfig.from_file(write(tmp_path, "[series]\norder = 5\n"))
