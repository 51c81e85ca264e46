"""Command-line interface.

Subcommands cover the whole offline workflow: ``extract`` turns a
geo-referenced raster plus a point shapefile into labeled HSB patches,
``generate`` materializes augmented, shuffled training batches from such a
patch tree, ``augment`` applies one seeded augmentation pass to a directory
of patches, ``convert`` bridges HSB and ``.npy``, and ``bench`` measures
end-to-end batch generation throughput on a caller-supplied dataset.

Every run prints a ``config: {...}`` line with its fully resolved
parameters (defaulted seed included), so any output can be reproduced from
a captured log. Exit status is 0 on success, 1 on domain or I/O errors, 2
on usage errors (including out-of-range flag values). Set HYPERAUG_LOG
(DEBUG/INFO/WARNING/ERROR) to control log verbosity.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import hsb
from .errors import HyperaugError, InvalidArgumentError
from .geo import (BandFileRasterSource, BorderPolicy, attach_labels, extract_all,
                  load_labels_csv, parse_shapefile_points)
from .pipeline import (default_workers, epoch_plan, generate_dataset,
                       index_dataset, next_batch)
from .seeding import sample_seed
from .transforms import AugmentConfig, augment_image

log = logging.getLogger("hyperaug.cli")


def _setup_logging() -> None:
    name = os.environ.get("HYPERAUG_LOG", "WARNING").upper()
    level = getattr(logging, name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _echo_config(values: dict) -> None:
    print("config: " + json.dumps(values, sort_keys=True))


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _add_augment_flags(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("augmentation")
    g.add_argument("--flip-h", action="store_true",
                   help="enable random horizontal flips (p=0.5)")
    g.add_argument("--flip-v", action="store_true",
                   help="enable random vertical flips (p=0.5)")
    g.add_argument("--rotation", type=float, default=0.0, metavar="DEG",
                   help="max rotation angle; sampled in [-DEG, DEG] (default 0)")
    g.add_argument("--translation", type=float, default=0.0, metavar="FRAC",
                   help="max shift as a fraction of each image dimension "
                        "(default 0)")
    g.add_argument("--zoom", type=float, default=1.0, metavar="FACTOR",
                   help="max zoom factor >= 1; scale sampled in "
                        "[1/FACTOR, FACTOR] (default 1)")
    g.add_argument("--shear", type=float, default=0.0, metavar="FRAC",
                   help="max shear coefficient (x' = x + shear*y); sampled in "
                        "[-FRAC, FRAC] (default 0)")
    g.add_argument("--speckle-variance", type=float, default=0.0, metavar="VAR",
                   help="multiplicative Gaussian noise variance (default 0)")


def _materialize_config(args: argparse.Namespace) -> AugmentConfig:
    # Out-of-range flag values are usage errors, not runtime failures.
    try:
        return AugmentConfig(flip_horizontal=args.flip_h,
                             flip_vertical=args.flip_v,
                             max_rotation=args.rotation,
                             max_translation=args.translation,
                             max_zoom=args.zoom,
                             max_shear=args.shear,
                             speckle_variance=args.speckle_variance)
    except InvalidArgumentError as exc:
        args.parser.error(str(exc))
        raise AssertionError("unreachable")  # parser.error always exits


def _config_echo_fields(config: AugmentConfig) -> dict:
    return {"flip_h": config.flip_horizontal,
            "flip_v": config.flip_vertical,
            "rotation": config.max_rotation,
            "translation": config.max_translation,
            "zoom": config.max_zoom,
            "shear": config.max_shear,
            "speckle_variance": config.speckle_variance}


def cmd_augment(args: argparse.Namespace) -> int:
    config = _materialize_config(args)
    _echo_config({**_config_echo_fields(config), "seed": args.seed,
                  "input": args.input, "output": args.output})
    in_dir = Path(args.input)
    if not in_dir.is_dir():
        raise InvalidArgumentError(f"input {in_dir} is not a directory")
    files = sorted(p for p in in_dir.iterdir()
                   if p.is_file() and p.suffix == ".hsb")
    if not files:
        raise InvalidArgumentError(f"no .hsb files in {in_dir}")
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    # Per-file seeds: slot = position in sorted name order, so a rerun with
    # the same seed reproduces every output byte.
    for slot, path in enumerate(files):
        image = hsb.read_image(path)
        result = augment_image(image, config, sample_seed(args.seed, 0, 0, slot))
        hsb.write_image(out_dir / path.name, result)
    print(f"wrote {len(files)} files to {out_dir}")
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    config = _materialize_config(args)
    workers = args.workers if args.workers is not None else default_workers()
    _echo_config({**_config_echo_fields(config),
                  "batch_size": args.batch_size,
                  "batches": args.batches,
                  "epochs": args.epochs,
                  "seed": args.seed,
                  "workers": workers,
                  "data_root": args.data_root,
                  "out": args.out})
    written = generate_dataset(args.data_root, args.out, config,
                               batch_size=args.batch_size,
                               batches_per_epoch=args.batches,
                               epochs=args.epochs,
                               master_seed=args.seed,
                               workers=workers)
    print(f"wrote {len(written)} batch files to {args.out}")
    return 0


def cmd_extract(args: argparse.Namespace) -> int:
    _echo_config({"size": args.size, "policy": args.policy,
                  "points": args.points, "labels": args.labels,
                  "workers": args.workers, "raster": args.raster,
                  "out": args.out})
    points = parse_shapefile_points(Path(args.points).read_bytes())
    if args.labels is not None:
        points = attach_labels(points, load_labels_csv(args.labels))
    src = BandFileRasterSource(args.raster)
    report = extract_all(src, points, args.size, BorderPolicy(args.policy),
                         args.out, workers=args.workers)
    print(f"written={report.written} skipped={len(report.skipped)}")
    if report.skipped:
        print("skipped_records=" + ",".join(str(r) for r in report.skipped))
    return 0


def cmd_convert(args: argparse.Namespace) -> int:
    src, dst = Path(args.input), Path(args.output)
    _echo_config({"input": str(src), "output": str(dst)})
    if src.suffix == ".hsb" and dst.suffix == ".npy":
        hsb.hsb_to_npy(src, dst)
    elif src.suffix == ".npy" and dst.suffix == ".hsb":
        hsb.npy_to_hsb(src, dst)
    else:
        raise InvalidArgumentError(
            f"cannot convert {src.suffix or '(no suffix)'} to "
            f"{dst.suffix or '(no suffix)'}; use .hsb and .npy")
    print(f"wrote {dst}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    config = _materialize_config(args)
    _echo_config({**_config_echo_fields(config),
                  "batch_size": args.batch_size, "batches": args.batches,
                  "seed": args.seed, "data_root": args.data_root})
    index = index_dataset(args.data_root)
    plan = epoch_plan(index, args.batches, args.batch_size, args.seed, epoch=0)
    start = time.perf_counter()
    for batch in range(args.batches):
        next_batch(index, plan, batch, args.batch_size, config,
                   args.seed, epoch=0)
    elapsed = time.perf_counter() - start
    print(f"throughput_batches_per_sec={args.batches / elapsed:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperaug",
        description="Deterministic augmentation and patch extraction for "
                    "multi-band imagery.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("augment",
                       help="augment every HSB patch in a directory")
    p.add_argument("input", help="directory of .hsb patches")
    p.add_argument("output", help="output directory (created if needed)")
    p.add_argument("--seed", type=int, default=0,
                   help="master seed for per-file draws (default 0)")
    _add_augment_flags(p)
    p.set_defaults(func=cmd_augment, parser=p)

    p = sub.add_parser("generate",
                       help="write augmented, shuffled training batches")
    p.add_argument("data_root",
                   help="dataset root: one subdirectory of .hsb patches per class")
    p.add_argument("out", help="output directory for .hsbb batch files")
    p.add_argument("--batch-size", type=_positive_int, required=True)
    p.add_argument("--batches", type=_positive_int, required=True,
                   help="batches per epoch")
    p.add_argument("--epochs", type=_positive_int, default=1)
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--workers", type=_positive_int, default=None,
                   help="process count (default: all cores); output bytes are "
                        "independent of this")
    _add_augment_flags(p)
    p.set_defaults(func=cmd_generate, parser=p)

    p = sub.add_parser("extract",
                       help="cut labeled patches from a raster at shapefile points")
    p.add_argument("raster",
                   help="JSON sidecar naming the band files and geotransform")
    p.add_argument("out", help="output directory")
    p.add_argument("--points", required=True, help="ESRI .shp file of points")
    p.add_argument("--size", type=_positive_int, required=True,
                   help="patch size in pixels")
    p.add_argument("--labels", default=None,
                   help="optional record,label CSV; labeled patches go into "
                        "per-label subdirectories")
    p.add_argument("--policy", choices=[b.value for b in BorderPolicy],
                   default=BorderPolicy.SKIP.value,
                   help="handling of windows that leave the raster "
                        "(default skip)")
    p.add_argument("--workers", type=_positive_int, default=1,
                   help="thread count (default 1)")
    p.set_defaults(func=cmd_extract, parser=p)

    p = sub.add_parser("convert", help="convert between .hsb and .npy")
    p.add_argument("input", help="source file (.hsb or .npy)")
    p.add_argument("output", help="destination file (the other format)")
    p.set_defaults(func=cmd_convert, parser=p)

    p = sub.add_parser("bench",
                       help="measure batch generation throughput on a dataset")
    p.add_argument("data_root", help="dataset root, as for generate")
    p.add_argument("--batch-size", type=_positive_int, default=128)
    p.add_argument("--batches", type=_positive_int, default=20)
    p.add_argument("--seed", type=int, default=0)
    _add_augment_flags(p)
    p.set_defaults(func=cmd_bench, parser=p)
    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse argv and dispatch; returns the process exit code.

    argparse exits 0 for --help and 2 for usage errors; both surface as
    return codes so embedders never see SystemExit.
    """
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (HyperaugError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
