from __future__ import annotations

import pytest

from wanas.catalog import load_catalog


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def groups(catalog):
    return {gid: catalog.get_group(gid) for gid in catalog.groups}
