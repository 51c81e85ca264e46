"""Bit-exact binary containers for patches and generated batches.

HSB v1 (one patch per file):
    magic  b"HSB1"
    u32le  height, width, channels
    f32le  height*width*channels samples, row-major, channel-last

HSBB v1 (one generated batch per file):
    magic  b"HSBB"
    u32le  batch_size, height, width, channels, num_classes
    f32le  batch_size*height*width*channels image samples (C-order)
    f32le  batch_size*num_classes one-hot labels (C-order)

Both formats are little-endian regardless of host. ``.npy`` conversion uses
the standard version 1.0 array container via numpy.
"""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import HsbFormatError, InvalidArgumentError
from .image import HyperImage

HSB_MAGIC = b"HSB1"
BATCH_MAGIC = b"HSBB"

_HSB_HEADER = struct.Struct("<4sIII")
_BATCH_HEADER = struct.Struct("<4sIIIII")


def image_to_bytes(img: HyperImage) -> bytes:
    header = _HSB_HEADER.pack(HSB_MAGIC, img.height, img.width, img.channels)
    return header + img.data.astype("<f4", copy=False).tobytes()


def image_from_bytes(data: bytes, source: str = "<bytes>") -> HyperImage:
    if len(data) < _HSB_HEADER.size:
        raise HsbFormatError(f"{source}: too short for an HSB header")
    magic, h, w, c = _HSB_HEADER.unpack_from(data, 0)
    if magic != HSB_MAGIC:
        raise HsbFormatError(f"{source}: bad magic {magic!r}, expected {HSB_MAGIC!r}")
    expected = _HSB_HEADER.size + h * w * c * 4
    if h < 1 or w < 1 or c < 1:
        raise HsbFormatError(f"{source}: degenerate shape ({h}, {w}, {c})")
    if len(data) != expected:
        raise HsbFormatError(
            f"{source}: payload is {len(data)} bytes, expected {expected} "
            f"for shape ({h}, {w}, {c})")
    samples = np.frombuffer(data, dtype="<f4", offset=_HSB_HEADER.size)
    return HyperImage(samples.reshape(h, w, c).astype(np.float32))


def write_image(path: str | Path, img: HyperImage) -> None:
    Path(path).write_bytes(image_to_bytes(img))


def read_image(path: str | Path) -> HyperImage:
    return image_from_bytes(Path(path).read_bytes(), source=str(path))


def write_batch(path: str | Path, images: np.ndarray, labels: np.ndarray) -> None:
    """Write one generated batch (stacked images plus one-hot labels)."""
    if images.ndim != 4:
        raise InvalidArgumentError(f"batch images must be 4-d, got ndim={images.ndim}")
    if labels.ndim != 2 or labels.shape[0] != images.shape[0]:
        raise InvalidArgumentError(
            f"labels shape {labels.shape} does not match batch of {images.shape[0]}")
    n, h, w, c = images.shape
    header = _BATCH_HEADER.pack(BATCH_MAGIC, n, h, w, c, labels.shape[1])
    with open(path, "wb") as f:
        f.write(header)
        f.write(np.ascontiguousarray(images, dtype="<f4").tobytes())
        f.write(np.ascontiguousarray(labels, dtype="<f4").tobytes())


def read_batch(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Read one generated batch; returns (images [N,H,W,C], labels [N,K])."""
    data = Path(path).read_bytes()
    if len(data) < _BATCH_HEADER.size:
        raise HsbFormatError(f"{path}: too short for an HSBB header")
    magic, n, h, w, c, k = _BATCH_HEADER.unpack_from(data, 0)
    if magic != BATCH_MAGIC:
        raise HsbFormatError(f"{path}: bad magic {magic!r}, expected {BATCH_MAGIC!r}")
    img_count = n * h * w * c
    expected = _BATCH_HEADER.size + (img_count + n * k) * 4
    if len(data) != expected:
        raise HsbFormatError(f"{path}: payload is {len(data)} bytes, expected {expected}")
    flat = np.frombuffer(data, dtype="<f4", offset=_BATCH_HEADER.size)
    images = flat[:img_count].reshape(n, h, w, c).astype(np.float32)
    labels = flat[img_count:].reshape(n, k).astype(np.float32)
    return images, labels


def hsb_to_npy(src: str | Path, dst: str | Path) -> None:
    """Export an HSB patch to a version-1.0 ``.npy`` float32 array."""
    img = read_image(src)
    with open(dst, "wb") as f:
        np.save(f, np.asarray(img.data), allow_pickle=False)


def npy_to_hsb(src: str | Path, dst: str | Path) -> None:
    """Import a ``.npy`` array as an HSB patch.

    Accepts (H, W, C) arrays; a 2-d (H, W) array is treated as one channel.
    Values are cast to float32 without scaling.
    """
    arr = np.load(src, allow_pickle=False)
    if arr.ndim == 2:
        arr = arr[:, :, None]
    if arr.ndim != 3:
        raise InvalidArgumentError(
            f"{src}: expected a 2-d or 3-d array, got ndim={arr.ndim}")
    write_image(dst, HyperImage(arr.astype(np.float32)))
