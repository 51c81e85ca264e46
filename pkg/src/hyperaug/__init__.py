"""Deterministic augmentation and patch extraction for multi-band imagery.

The package turns geo-referenced rasters into labeled training patches and
those patches into reproducibly augmented batches. Every random decision is
derived from a master seed through a counter-based scheme, so any batch can
be regenerated in isolation and parallel runs are byte-identical to serial
ones.
"""
from .errors import (EmptyClassError, EmptyDatasetError, HsbFormatError,
                     HyperaugError, InvalidArgumentError, NotAShapefileError,
                     ShapeMismatchError, TruncatedShapefileError,
                     UnsupportedGeometryError)
from .geo import (ArrayRasterSource, BandFileRasterSource, BorderPolicy,
                  ExtractReport, GeoTransform, PointRecord, RasterSource,
                  SkipNotice, attach_labels, extract_all, extract_patch,
                  load_labels_csv, parse_shapefile_points, patch_file_name)
from .hsb import (hsb_to_npy, image_from_bytes, image_to_bytes, npy_to_hsb,
                  read_batch, read_image, write_batch, write_image)
from .image import HyperImage, LabeledSample, from_bands, new_image, to_bands
from .pipeline import (Batch, DatasetIndex, SeedRecipe, batch_file_name,
                       default_workers, derive_seed, epoch_plan,
                       generate_dataset, index_dataset, iter_batches,
                       next_batch, one_hot)
from .seeding import mix64, permutation_seed, sample_seed
from .transforms import (AffineMatrix, AugmentConfig, AugmentParams, augment,
                         augment_image, flip_h, flip_v, make_affine,
                         sample_params, speckle, warp_affine)

__version__ = "0.1.0"

__all__ = [
    "AffineMatrix", "ArrayRasterSource", "AugmentConfig", "AugmentParams",
    "BandFileRasterSource", "Batch", "BorderPolicy", "DatasetIndex",
    "EmptyClassError", "EmptyDatasetError", "ExtractReport", "GeoTransform",
    "HsbFormatError", "HyperaugError", "HyperImage", "InvalidArgumentError",
    "LabeledSample", "NotAShapefileError", "PointRecord", "RasterSource",
    "SeedRecipe", "ShapeMismatchError", "SkipNotice",
    "TruncatedShapefileError", "UnsupportedGeometryError", "attach_labels",
    "augment", "augment_image", "batch_file_name", "default_workers",
    "derive_seed", "epoch_plan", "extract_all", "extract_patch", "flip_h",
    "flip_v", "from_bands", "generate_dataset", "hsb_to_npy",
    "image_from_bytes", "image_to_bytes", "index_dataset", "iter_batches",
    "load_labels_csv", "make_affine", "mix64", "new_image", "next_batch",
    "npy_to_hsb", "one_hot", "parse_shapefile_points", "patch_file_name",
    "permutation_seed", "read_batch", "read_image", "sample_params",
    "sample_seed", "speckle", "to_bands", "warp_affine", "write_batch",
    "write_image",
]
