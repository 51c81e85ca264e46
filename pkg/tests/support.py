"""Shared helpers for the test suite (kept out of conftest so test modules
can import them by a unique module name)."""
from pathlib import Path

import numpy as np

from hyperaug import HyperImage, write_image

DATA_DIR = Path(__file__).parent / "data"


def random_image(rng: np.random.Generator, height: int, width: int,
                 channels: int) -> HyperImage:
    return HyperImage(rng.random((height, width, channels), dtype=np.float32))


def build_dataset(root: Path, class_names: list[str], per_class: int,
                  shape: tuple[int, int, int], seed: int = 0) -> Path:
    """Class-per-folder HSB dataset with reproducible random content."""
    rng = np.random.default_rng(seed)
    for name in class_names:
        folder = root / name
        folder.mkdir(parents=True)
        for i in range(per_class):
            write_image(folder / f"sample{i:03d}.hsb",
                        random_image(rng, *shape))
    return root


def build_value_raster(folder: Path, height: int = 256, width: int = 256,
                       channels: int = 3) -> Path:
    """Geo-referenced raster whose band 0 sample value is row*width + col.

    Band k adds k*100000 (exactly representable in float32 here), so tests
    can tell channels apart. The grid matches tests/data/extract5.shp:
    origin (300000, 5000000), 10 m pixels. Returns the sidecar path.
    """
    import json

    folder.mkdir(parents=True, exist_ok=True)
    rows, cols = np.mgrid[0:height, 0:width]
    base = (rows * width + cols).astype(np.float32)
    names = []
    for k in range(channels):
        name = f"band{k}.hsb"
        write_image(folder / name, HyperImage((base + k * 100000.0)[:, :, None]))
        names.append(name)
    sidecar = folder / "raster.json"
    sidecar.write_text(json.dumps({
        "origin_x": 300000.0, "origin_y": 5000000.0,
        "pixel_width": 10.0, "pixel_height": 10.0, "bands": names}))
    return sidecar
