"""N-channel image value type and construction utilities.

Images are dense (height, width, channels) rasters of float32 samples in
row-major, channel-last order, so the spectrum of one pixel is contiguous
in memory. The channel count is unbounded above 1; thirteen-band satellite
patches are the motivating case but nothing in the library depends on any
particular count.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, ShapeMismatchError


@dataclass(frozen=True)
class HyperImage:
    """Immutable (H, W, C) float32 raster.

    The wrapped array is validated on construction (three dimensions, every
    dimension >= 1, all samples finite) and marked read-only. A compliant
    float32 C-contiguous input is wrapped without copying; anything else is
    converted. All public library operations return fresh, frozen arrays,
    so instances are safe to share across threads.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 3:
            raise InvalidArgumentError(
                f"image data must be 3-dimensional (H, W, C), got ndim={arr.ndim}")
        if min(arr.shape) < 1:
            raise InvalidArgumentError(
                f"image dimensions must all be >= 1, got shape {arr.shape}")
        if arr.dtype != np.float32 or not arr.flags.c_contiguous:
            arr = np.ascontiguousarray(arr, dtype=np.float32)
        elif arr.flags.writeable:
            # Freeze a view so the constructor never mutates caller state.
            arr = arr.view()
        if not np.isfinite(arr).all():
            raise InvalidArgumentError("image data contains NaN or Inf samples")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.data.shape


@dataclass(frozen=True)
class LabeledSample:
    """An image paired with its class index; augmentation never touches the label."""

    image: HyperImage
    label_index: int


def new_image(height: int, width: int, channels: int, fill: float = 0.0) -> HyperImage:
    """Create an image of the given shape with every sample set to ``fill``."""
    if height < 1 or width < 1 or channels < 1:
        raise InvalidArgumentError(
            f"dimensions must all be >= 1, got ({height}, {width}, {channels})")
    return HyperImage(np.full((height, width, channels), fill, dtype=np.float32))


def from_bands(bands: list[HyperImage]) -> HyperImage:
    """Stack single-channel images into one multi-channel image.

    Band k of the output equals ``bands[k]``; all bands must share height
    and width and have exactly one channel.
    """
    if not bands:
        raise InvalidArgumentError("from_bands requires at least one band")
    h, w = bands[0].height, bands[0].width
    for i, band in enumerate(bands):
        if band.channels != 1:
            raise ShapeMismatchError(
                f"band {i} has {band.channels} channels, expected 1")
        if band.height != h or band.width != w:
            raise ShapeMismatchError(
                f"band {i} is {band.height}x{band.width}, expected {h}x{w}")
    stacked = np.concatenate([b.data for b in bands], axis=2)
    return HyperImage(stacked)


def to_bands(img: HyperImage) -> list[HyperImage]:
    """Split an image into its single-channel bands; inverse of from_bands."""
    return [HyperImage(np.ascontiguousarray(img.data[:, :, k:k + 1]))
            for k in range(img.channels)]
