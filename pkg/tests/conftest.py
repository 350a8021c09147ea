import pytest

from flowcomplex import GALLERY, build


@pytest.fixture(scope="session")
def gallery_complexes():
    return {entry.name: build(entry.name, None) for entry in GALLERY}
