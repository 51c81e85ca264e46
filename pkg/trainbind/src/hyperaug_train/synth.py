"""Synthetic patterned dataset for smoke-testing the training binding.

Each class gets a distinct spectral signature (a sinusoid over the band
axis whose frequency and phase are keyed by the class index) modulated by
a mild spatial ramp, plus a little noise. The signal lives in the spectral
dimension on purpose: flips, rotations, zooms and shears cannot erase it,
so even heavily augmented batches stay learnable by a tiny classifier.

Usable as a script::

    python -m hyperaug_train.synth out_dir --classes 10 --per-class 12
"""
from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from hyperaug import HyperImage, write_image


def make_synthetic_dataset(root: str | Path, classes: int = 10,
                           per_class: int = 12, height: int = 8,
                           width: int = 8, channels: int = 13,
                           seed: int = 0) -> Path:
    """Write ``classes`` subfolders of patterned .hsb patches; returns root."""
    root = Path(root)
    rng = np.random.default_rng(seed)
    bands = np.arange(channels, dtype=np.float64)
    rows = np.arange(height, dtype=np.float64)[:, None, None]
    cols = np.arange(width, dtype=np.float64)[None, :, None]
    for c in range(classes):
        signature = 0.5 + 0.35 * np.sin(
            2.0 * np.pi * (c + 1) * bands / channels + 0.7 * c)
        ramp = 0.05 * (rows / max(height - 1, 1) + cols / max(width - 1, 1))
        class_dir = root / f"class_{c:02d}"
        class_dir.mkdir(parents=True, exist_ok=True)
        for i in range(per_class):
            noise = rng.normal(0.0, 0.02, size=(height, width, channels))
            data = signature[None, None, :] + ramp + noise
            img = HyperImage(np.clip(data, 0.0, 1.5).astype(np.float32))
            write_image(class_dir / f"patch_{i:03d}.hsb", img)
    return root


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description="write a tiny patterned dataset of .hsb patches")
    parser.add_argument("out", help="dataset root to create")
    parser.add_argument("--classes", type=int, default=10)
    parser.add_argument("--per-class", type=int, default=12)
    parser.add_argument("--height", type=int, default=8)
    parser.add_argument("--width", type=int, default=8)
    parser.add_argument("--channels", type=int, default=13)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    make_synthetic_dataset(args.out, args.classes, args.per_class,
                           args.height, args.width, args.channels, args.seed)
    print(f"wrote {args.classes} classes x {args.per_class} patches to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
