"""Geo-referenced patch extraction from point coordinates.

The workflow: parse point geometries out of an ESRI ``.shp`` main file, map
each world coordinate to a pixel index through an axis-aligned
geotransform, and crop a fixed-size window centered on that pixel from a
raster source, writing each patch as an HSB file.

Shapefile coordinates are assumed to be in the raster's CRS: no
reprojection is performed, and a CRS mismatch silently produces wrong pixel
locations. Raster access sits behind :class:`RasterSource`; the built-in
provider reads a directory of per-band HSB files described by a JSON
sidecar, and any external decoder (e.g. for JPEG 2000 products) can feed
the same pipeline by materializing such band files, or by constructing an
:class:`ArrayRasterSource` from decoded arrays.
"""
from __future__ import annotations

import csv
import json
import logging
import math
import struct
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

import numpy as np

from . import hsb
from .errors import (HyperaugError, InvalidArgumentError, NotAShapefileError,
                     TruncatedShapefileError, UnsupportedGeometryError)
from .image import HyperImage, from_bands

log = logging.getLogger("hyperaug.geo")

SHAPEFILE_FILE_CODE = 9994
SHAPE_POINT = 1
SHAPE_POINT_Z = 11
_HEADER_SIZE = 100


@dataclass(frozen=True)
class PointRecord:
    """One parsed shapefile point, optionally carrying a sidecar CSV label."""

    record_number: int
    x: float
    y: float
    label: str | None = None


@dataclass(frozen=True)
class GeoTransform:
    """Axis-aligned world-to-pixel mapping (no rotation or skew terms).

    ``origin_x``/``origin_y`` locate the raster's top-left corner; rows
    increase southward, so pixel_height is positive.
    """

    origin_x: float
    origin_y: float
    pixel_width: float
    pixel_height: float

    def __post_init__(self):
        if self.pixel_width <= 0 or self.pixel_height <= 0:
            raise InvalidArgumentError(
                f"pixel size must be positive, got "
                f"{self.pixel_width} x {self.pixel_height}")

    def world_to_pixel(self, x: float, y: float) -> tuple[int, int]:
        """(col, row) containing the world point; negative when outside."""
        col = math.floor((x - self.origin_x) / self.pixel_width)
        row = math.floor((self.origin_y - y) / self.pixel_height)
        return col, row

    def pixel_to_world(self, col: int, row: int) -> tuple[float, float]:
        """World coordinate of the pixel's center."""
        return (self.origin_x + (col + 0.5) * self.pixel_width,
                self.origin_y - (row + 0.5) * self.pixel_height)


def parse_shapefile_points(data: bytes) -> list[PointRecord]:
    """Parse the Point/PointZ records of an ESRI ``.shp`` main file.

    Reads the 100-byte header (big-endian file code 9994 at offset 0,
    little-endian shape type at offset 32) and then successive records,
    each an 8-byte big-endian record header followed by little-endian
    content. PointZ records have their Z (and optional M) ignored. Every
    read is bounds-checked, so arbitrary truncations raise structured
    errors instead of crashing.
    """
    if len(data) < 4:
        raise NotAShapefileError(f"{len(data)}-byte buffer is too short for a shapefile")
    (file_code,) = struct.unpack_from(">i", data, 0)
    if file_code != SHAPEFILE_FILE_CODE:
        raise NotAShapefileError(
            f"bad file code {file_code}, expected {SHAPEFILE_FILE_CODE}")
    if len(data) < _HEADER_SIZE:
        raise TruncatedShapefileError(len(data), "incomplete 100-byte header")
    (shape_type,) = struct.unpack_from("<i", data, 32)
    if shape_type not in (SHAPE_POINT, SHAPE_POINT_Z):
        raise UnsupportedGeometryError(shape_type)

    records: list[PointRecord] = []
    pos = _HEADER_SIZE
    while pos < len(data):
        if pos + 8 > len(data):
            raise TruncatedShapefileError(pos, "incomplete record header")
        record_number, content_words = struct.unpack_from(">ii", data, pos)
        content_bytes = content_words * 2
        if content_bytes < 4:
            raise TruncatedShapefileError(
                pos, f"record {record_number} declares {content_bytes}-byte content")
        if pos + 8 + content_bytes > len(data):
            raise TruncatedShapefileError(
                pos + 8, f"record {record_number} content runs past the buffer end")
        (record_type,) = struct.unpack_from("<i", data, pos + 8)
        if record_type not in (SHAPE_POINT, SHAPE_POINT_Z):
            raise UnsupportedGeometryError(record_type)
        needed = 20 if record_type == SHAPE_POINT else 28
        if content_bytes < needed:
            raise TruncatedShapefileError(
                pos + 8, f"record {record_number}: {content_bytes}-byte content is "
                f"too small for shape type {record_type}")
        x, y = struct.unpack_from("<2d", data, pos + 12)
        records.append(PointRecord(record_number=record_number, x=x, y=y))
        pos += 8 + content_bytes
    return records


def load_labels_csv(path: str | Path) -> dict[int, str]:
    """Read a ``record,label`` sidecar CSV into a record-number map."""
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != ["record", "label"]:
            raise InvalidArgumentError(
                f"{path}: expected header 'record,label', got {header}")
        labels = {}
        for row_num, row in enumerate(reader, start=2):
            if len(row) != 2:
                raise InvalidArgumentError(f"{path}:{row_num}: expected 2 columns")
            try:
                record_number = int(row[0])
            except ValueError:
                raise InvalidArgumentError(
                    f"{path}:{row_num}: record number {row[0]!r} is not an integer")
            labels[record_number] = row[1]
    return labels


def attach_labels(points: list[PointRecord],
                  labels: dict[int, str]) -> list[PointRecord]:
    return [replace(p, label=labels.get(p.record_number, p.label)) for p in points]


class RasterSource(ABC):
    """Provider of a geo-referenced raster readable in windows.

    Implementations must be safe for concurrent reads and must return
    identical data for repeated reads of the same window.
    """

    @property
    @abstractmethod
    def height(self) -> int: ...

    @property
    @abstractmethod
    def width(self) -> int: ...

    @property
    @abstractmethod
    def channels(self) -> int: ...

    @property
    @abstractmethod
    def geotransform(self) -> GeoTransform: ...

    @abstractmethod
    def read_window(self, row0: int, col0: int, height: int, width: int) -> HyperImage:
        """Read the in-bounds window [row0, row0+height) x [col0, col0+width)."""


class ArrayRasterSource(RasterSource):
    """In-memory raster; the ingestion point for externally decoded imagery."""

    def __init__(self, image: HyperImage, geotransform: GeoTransform):
        self._image = image
        self._gt = geotransform

    @property
    def height(self) -> int:
        return self._image.height

    @property
    def width(self) -> int:
        return self._image.width

    @property
    def channels(self) -> int:
        return self._image.channels

    @property
    def geotransform(self) -> GeoTransform:
        return self._gt

    def read_window(self, row0: int, col0: int, height: int, width: int) -> HyperImage:
        if (row0 < 0 or col0 < 0 or height < 1 or width < 1
                or row0 + height > self.height or col0 + width > self.width):
            raise InvalidArgumentError(
                f"window [{row0}:{row0 + height}, {col0}:{col0 + width}) is not "
                f"inside a {self.height}x{self.width} raster")
        window = self._image.data[row0:row0 + height, col0:col0 + width, :]
        return HyperImage(np.ascontiguousarray(window))


class BandFileRasterSource(ArrayRasterSource):
    """Raster assembled from per-band HSB files listed in a JSON sidecar.

    The sidecar object carries ``origin_x``, ``origin_y``, ``pixel_width``,
    ``pixel_height``, and ``bands``: band file names (relative to the
    sidecar) in channel order. Bands are loaded eagerly, so reads are
    lock-free.
    """

    def __init__(self, sidecar_path: str | Path):
        sidecar_path = Path(sidecar_path)
        meta = json.loads(sidecar_path.read_text(encoding="utf-8"))
        missing = {"origin_x", "origin_y", "pixel_width", "pixel_height",
                   "bands"} - meta.keys()
        if missing:
            raise InvalidArgumentError(
                f"{sidecar_path}: sidecar is missing keys {sorted(missing)}")
        if not meta["bands"]:
            raise InvalidArgumentError(f"{sidecar_path}: sidecar lists no bands")
        gt = GeoTransform(origin_x=float(meta["origin_x"]),
                          origin_y=float(meta["origin_y"]),
                          pixel_width=float(meta["pixel_width"]),
                          pixel_height=float(meta["pixel_height"]))
        bands = [hsb.read_image(sidecar_path.parent / name) for name in meta["bands"]]
        super().__init__(from_bands(bands), gt)


class BorderPolicy(str, Enum):
    """What to do when a patch window leaves the raster."""

    SKIP = "skip"
    EDGE_PAD = "edge_pad"


@dataclass(frozen=True)
class SkipNotice:
    """Marker that a patch was not extracted, and why."""

    center_col: int
    center_row: int
    size: int
    reason: str


@dataclass
class ExtractReport:
    """Outcome of a batch extraction; written + len(skipped) == input points."""

    written: int
    skipped: list[int]


def extract_patch(src: RasterSource, center_col: int, center_row: int, size: int,
                  policy: BorderPolicy = BorderPolicy.SKIP) -> HyperImage | SkipNotice:
    """Crop a size x size window centered on (center_col, center_row).

    The window spans [center - size//2, center - size//2 + size) on each
    axis (for even sizes the center pixel is the top-left of the central
    2x2). Fully in-bounds windows are exact crops. Out-of-bounds windows
    are skipped under SKIP, or filled by replicating the nearest edge
    pixels under EDGE_PAD.
    """
    if size < 1:
        raise InvalidArgumentError(f"patch size must be >= 1, got {size}")
    policy = BorderPolicy(policy)
    r0 = center_row - size // 2
    c0 = center_col - size // 2
    if r0 >= 0 and c0 >= 0 and r0 + size <= src.height and c0 + size <= src.width:
        return src.read_window(r0, c0, size, size)
    if policy is BorderPolicy.SKIP:
        return SkipNotice(center_col=center_col, center_row=center_row, size=size,
                          reason=f"window [{r0}:{r0 + size}, {c0}:{c0 + size}) "
                                 f"leaves the {src.height}x{src.width} raster")
    rows = np.clip(np.arange(r0, r0 + size), 0, src.height - 1)
    cols = np.clip(np.arange(c0, c0 + size), 0, src.width - 1)
    rr0, rr1 = int(rows[0]), int(rows[-1]) + 1
    cc0, cc1 = int(cols[0]), int(cols[-1]) + 1
    window = src.read_window(rr0, cc0, rr1 - rr0, cc1 - cc0)
    patch = window.data.take(rows - rr0, axis=0).take(cols - cc0, axis=1)
    return HyperImage(np.ascontiguousarray(patch))


def patch_file_name(record_number: int) -> str:
    return f"{record_number:06d}.hsb"


def extract_all(src: RasterSource, points: list[PointRecord], size: int,
                policy: BorderPolicy, out_dir: str | Path,
                workers: int = 1) -> ExtractReport:
    """Extract a patch for every point; write HSB files named by record number.

    Labeled points are written under ``out_dir/<label>/``. Skipped or
    failed points land in the report's skipped list (ordered by record
    number); the report accounts for every input point exactly once
    regardless of the worker count.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for label in sorted({p.label for p in points if p.label}):
        (out_dir / label).mkdir(exist_ok=True)

    def handle(point: PointRecord) -> bool:
        col, row = src.geotransform.world_to_pixel(point.x, point.y)
        try:
            result = extract_patch(src, col, row, size, policy)
        except HyperaugError:
            raise
        except OSError as exc:
            log.warning("point %d failed: %s", point.record_number, exc)
            return False
        if isinstance(result, SkipNotice):
            log.info("point %d skipped: %s", point.record_number, result.reason)
            return False
        dest = out_dir / point.label if point.label else out_dir
        hsb.write_image(dest / patch_file_name(point.record_number), result)
        return True

    if workers <= 1:
        outcomes = [handle(p) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(handle, points))
    return ExtractReport(
        written=sum(outcomes),
        skipped=sorted(p.record_number for p, ok in zip(points, outcomes) if not ok))
