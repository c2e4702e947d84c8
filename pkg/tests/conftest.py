import pytest
from faker import Faker

from ncgroups.groups import Group
from ncgroups.specs import realize_text
from ncgroups.types import DEFAULT_SETTINGS
from tests.fixtures import FixturePaths
from tests.fixtures import paths
from tests.utils import GroupFactory


@pytest.fixture
def fixture_paths() -> FixturePaths:
    return paths


@pytest.fixture
def faker() -> Faker:
    return Faker()


@pytest.fixture(scope="session")
def group() -> GroupFactory:
    """Realize spec text once per session; groups are immutable and cache freely."""
    cache = {}

    def factory(text: str) -> Group:
        if text not in cache:
            cache[text] = realize_text(text, DEFAULT_SETTINGS)
        return cache[text]

    return factory


@pytest.fixture
def s3(group: GroupFactory) -> Group:
    return group("S3")


@pytest.fixture
def q8(group: GroupFactory) -> Group:
    return group("Q8")


@pytest.fixture
def d8(group: GroupFactory) -> Group:
    return group("D8")


@pytest.fixture
def a4(group: GroupFactory) -> Group:
    return group("A4")


@pytest.fixture
def a5(group: GroupFactory) -> Group:
    return group("A5")


@pytest.fixture
def f20(group: GroupFactory) -> Group:
    return group("F20")
