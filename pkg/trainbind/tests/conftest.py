import numpy as np
import pytest

from hyperaug import HyperImage, write_image
from hyperaug_train import make_synthetic_dataset


@pytest.fixture(scope="session")
def synth_root(tmp_path_factory):
    """10-class patterned 8x8x13 dataset, the smoke-train workload."""
    return make_synthetic_dataset(
        tmp_path_factory.mktemp("synth"), classes=10, per_class=12, seed=0)


@pytest.fixture(scope="session")
def satellite_root(tmp_path_factory):
    """A few full-size 64x64x13 patches across 10 classes."""
    root = tmp_path_factory.mktemp("sat")
    rng = np.random.default_rng(42)
    for c in range(10):
        class_dir = root / f"class_{c:02d}"
        class_dir.mkdir()
        for i in range(2):
            write_image(class_dir / f"p{i}.hsb",
                        HyperImage(rng.random((64, 64, 13), dtype=np.float32)))
    return root
