"""Shared fixtures: the packaged family database and surface-row table."""

import pytest

from fano95 import load_packaged_families, load_packaged_surface_rows


@pytest.fixture(scope="session")
def db():
    return load_packaged_families()


@pytest.fixture(scope="session")
def rows():
    return load_packaged_surface_rows()
