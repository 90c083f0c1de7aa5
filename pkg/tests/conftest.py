import functools

import pytest

import rootsys as R


@functools.lru_cache(maxsize=None)
def built(label: str) -> R.RootSystem:
    return R.build_system(label)


@pytest.fixture(scope="session")
def system():
    """Cached builder: system('G2') -> enumerated RootSystem."""
    return built


def sweep_labels(max_rank: int = 12) -> list[str]:
    """Every type in the verification sweep: rank >= 2 up to the cap."""
    return [str(t) for t in R.all_types(max_rank) if t.rank >= 2]


def small_labels() -> list[str]:
    """All types of rank <= 4, the exhaustive-oracle domain."""
    return [str(t) for t in R.all_types(4)]
