"""Shared fixtures."""

import pytest

from distantline.core.config import AppConfig, set_config


@pytest.fixture(autouse=True)
def default_config():
    """Run every test against the built-in defaults, not the user's config file."""
    set_config(AppConfig())
    yield
    set_config(AppConfig())
