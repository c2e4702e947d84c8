from typing import List

import pytest

from ncgroups.catalog import build_catalog
from ncgroups.groups import Group
from ncgroups.verify import VerificationContext
from ncgroups.verify import build_context


@pytest.fixture(scope="session")
def catalog_24() -> List[Group]:
    return build_catalog(24)


@pytest.fixture(scope="session")
def context_64() -> VerificationContext:
    """Catalog, atlas and isoclinism partition up to order 64, built once."""
    return build_context(64)
