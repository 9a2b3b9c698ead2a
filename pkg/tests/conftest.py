import pytest

from eulerian_orientations.maps import enumerate_labelled_maps


@pytest.fixture(scope="session")
def labelled_maps():
    """Labelled maps with at most three edges, keyed by edge count."""
    return {n: list(enumerate_labelled_maps(n)) for n in range(0, 4)}
