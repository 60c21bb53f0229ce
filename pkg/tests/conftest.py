import pytest

from aprop import Bounds, build_pair_context
from aprop.verify import bundled_algebra


@pytest.fixture(scope="session")
def contexts():
    """Pair contexts for bundled algebras at the default bounds, cached."""
    cache = {}

    def get(name, max_vars=2):
        key = (name, max_vars)
        if key not in cache:
            cache[key] = build_pair_context(
                bundled_algebra(name), bounds=Bounds(max_vars=max_vars)
            )
        return cache[key]

    return get
