import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).resolve().parent))

settings.register_profile("nsgkit", max_examples=40, deadline=None)
settings.load_profile("nsgkit")

FIXTURES = Path(__file__).resolve().parent / "fixtures"

from nsgkit import FiniteLcaGroup, PairSystem, WindowFamily  # noqa: E402


def random_signal(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def random_family(rng, group, n_labels, labels=None, weights=None):
    labels = labels or tuple(f"y{i}" for i in range(n_labels))
    if weights is None:
        weights = rng.uniform(0.25, 2.0, n_labels)
    windows = np.array([random_signal(rng, group.cardinality) for _ in range(n_labels)])
    return WindowFamily(group, labels, weights, windows)


def random_pair(rng, group, n_labels, kind="translation"):
    a = random_family(rng, group, n_labels)
    s = a.with_windows(np.array([random_signal(rng, group.cardinality) for _ in range(n_labels)]))
    return PairSystem(a, s, kind)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


GROUPS = [FiniteLcaGroup((16,)), FiniteLcaGroup((24,)), FiniteLcaGroup((4, 8)),
          FiniteLcaGroup((3, 5, 2))]
