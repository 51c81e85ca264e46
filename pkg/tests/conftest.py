import pytest

from support import build_dataset


@pytest.fixture(scope="session")
def fixture_dataset(tmp_path_factory):
    """200 samples: 10 classes x 20 patches of 16x16x13."""
    root = tmp_path_factory.mktemp("dataset200")
    return build_dataset(root, [f"Class{c:02d}" for c in range(10)],
                         per_class=20, shape=(16, 16, 13), seed=1234)
