import pytest

from svq.volumes import shipped_db


@pytest.fixture(scope="session")
def db():
    return shipped_db()
