"""Regenerate the shapefile fixtures under tests/data/.

Run with pyshp installed (``pip install pyshp``):

    python tools/gen_shp_fixtures.py

The fixtures are written by pyshp, an independent implementation of the
ESRI shapefile format, so the parser tests check our reader against bytes
we did not produce. The files are committed; rerunning this script must
reproduce them byte-for-byte (pyshp's writer is deterministic for fixed
input). After regenerating, print_expectations() output is pinned inside
tests/test_shapefile.py; update those constants if the fixture definitions
change.
"""
from __future__ import annotations

import io
from pathlib import Path

import shapefile

DATA_DIR = Path(__file__).resolve().parent.parent / "tests" / "data"

# Extraction scenario: 256x256 raster, origin (300000, 5000000), 10 m pixels.
# Points sit at pixel centers; record 5 is deliberately outside the raster.
EXTRACT_PIXELS = {1: (10, 20), 2: (128, 128), 3: (4, 4), 4: (250, 200),
                  5: (300, 100)}
EXTRACT_ORIGIN = (300000.0, 5000000.0)
EXTRACT_PIXEL_SIZE = 10.0


def _write_shp(name: str, build) -> bytes:
    buf = io.BytesIO()
    writer = shapefile.Writer(shp=buf, shapeType=build.shape_type)
    build(writer)
    writer.close()
    data = buf.getvalue()
    (DATA_DIR / name).write_bytes(data)
    print(f"{name}: {len(data)} bytes")
    return data


def point1(w):
    w.point(5.0, 7.0)


point1.shape_type = shapefile.POINT


def empty_point(w):
    pass


empty_point.shape_type = shapefile.POINT


def pointz(w):
    w.pointz(1.5, -2.5, 40.0)
    w.pointz(100.25, 200.75, -3.125)


pointz.shape_type = shapefile.POINTZ


def polygon(w):
    w.poly([[(0.0, 0.0), (0.0, 4.0), (4.0, 4.0), (4.0, 0.0), (0.0, 0.0)]])


polygon.shape_type = shapefile.POLYGON


def three_points(w):
    w.point(1.0, 2.0)
    w.point(3.0, 4.0)
    w.point(5.0, 6.0)


three_points.shape_type = shapefile.POINT


def extract5(w):
    ox, oy = EXTRACT_ORIGIN
    for col, row in EXTRACT_PIXELS.values():
        w.point(ox + (col + 0.5) * EXTRACT_PIXEL_SIZE,
                oy - (row + 0.5) * EXTRACT_PIXEL_SIZE)


extract5.shape_type = shapefile.POINT


def print_expectations(name: str, data: bytes) -> None:
    reader = shapefile.Reader(shp=io.BytesIO(data))
    points = [(s.points[0] if s.points else None) for s in reader.iterShapes()]
    print(f"  {name}: shapeType={reader.shapeType} points={points}")


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    fixtures = {
        "point1.shp": point1,
        "empty_point.shp": empty_point,
        "pointz.shp": pointz,
        "polygon.shp": polygon,
        "three_points.shp": three_points,
        "extract5.shp": extract5,
    }
    written = {name: _write_shp(name, build) for name, build in fixtures.items()}

    labels = DATA_DIR / "extract5_labels.csv"
    labels.write_text("record,label\n1,park\n2,park\n3,water\n5,park\n",
                      encoding="utf-8")
    print(f"{labels.name}: {labels.stat().st_size} bytes")

    print("pyshp parse of each fixture (pin these in tests):")
    for name, data in written.items():
        print_expectations(name, data)


if __name__ == "__main__":
    main()
