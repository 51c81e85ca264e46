"""Deterministic batch generation from a labeled patch directory.

A dataset lives on disk as ``root/<ClassName>/<sample files>`` with one HSB
patch per file. Classes are labeled by the alphabetical order of their
directory names. The batch stream is a pure function of (dataset, config,
master seed): sample order comes from cycling seeded shuffles that continue
across epoch boundaries (so per-sample usage counts over any prefix of the
stream differ by at most one), and each sample's augmentation seed is
derived from (master seed, epoch, batch, slot) independently of any shared
generator state. Batches can therefore be produced by any number of
workers, in any order, with byte-identical results.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import hsb
from .errors import (EmptyClassError, EmptyDatasetError, InvalidArgumentError,
                     ShapeMismatchError)
from .image import LabeledSample
from .seeding import permutation_seed, sample_seed
from .transforms import AugmentConfig, augment


@dataclass(frozen=True)
class DatasetIndex:
    """Catalog of one labeled dataset: sorted class names and (path, label) pairs."""

    class_names: tuple[str, ...]
    samples: tuple[tuple[str, int], ...]

    @property
    def num_classes(self) -> int:
        return len(self.class_names)

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class SeedRecipe:
    """Coordinates that fully determine one sample's augmentation seed."""

    master_seed: int
    epoch: int
    batch: int
    sample_slot: int


@dataclass
class Batch:
    """One generated batch: stacked images and one-hot float32 labels."""

    images: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        if self.images.shape[0] != self.labels.shape[0]:
            raise ShapeMismatchError(
                f"{self.images.shape[0]} images but {self.labels.shape[0]} labels")

    @property
    def batch_size(self) -> int:
        return self.images.shape[0]


def derive_seed(recipe: SeedRecipe) -> int:
    """Per-sample seed: SplitMix64 chain over the recipe's four fields."""
    return sample_seed(recipe.master_seed, recipe.epoch, recipe.batch,
                       recipe.sample_slot)


def index_dataset(root: str | Path) -> DatasetIndex:
    """Index ``root/<ClassName>/<files>`` deterministically.

    Class names are the sorted subdirectory names; label i is
    ``class_names[i]``. Files within a class are sorted by name. Hidden
    entries are ignored.
    """
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset root {root} is not a directory")
    class_dirs = sorted(p for p in root.iterdir()
                        if p.is_dir() and not p.name.startswith("."))
    if not class_dirs:
        raise EmptyDatasetError(f"dataset root {root} contains no class directories")
    samples: list[tuple[str, int]] = []
    for label, class_dir in enumerate(class_dirs):
        files = sorted(p for p in class_dir.iterdir()
                       if p.is_file() and not p.name.startswith("."))
        if not files:
            raise EmptyClassError(class_dir.name)
        samples.extend((str(p), label) for p in files)
    return DatasetIndex(class_names=tuple(d.name for d in class_dirs),
                        samples=tuple(samples))


def one_hot(label_index: int, num_classes: int) -> np.ndarray:
    """Unit basis vector of length num_classes with a 1 at label_index."""
    if num_classes < 1:
        raise InvalidArgumentError(f"num_classes must be >= 1, got {num_classes}")
    if not 0 <= label_index < num_classes:
        raise InvalidArgumentError(
            f"label_index {label_index} out of range [0, {num_classes})")
    vec = np.zeros(num_classes, dtype=np.float32)
    vec[label_index] = 1.0
    return vec


def epoch_plan(index: DatasetIndex, batches_per_epoch: int, batch_size: int,
               master_seed: int, epoch: int) -> np.ndarray:
    """Sample ids for one epoch of the infinite shuffled stream.

    The stream is the concatenation of seeded permutations of the dataset
    (permutation k is seeded from (master_seed, k)); epoch e's plan is the
    window [e*N, (e+1)*N) of that stream, N = batches_per_epoch*batch_size.
    Cycling continues across epochs, so usage counts over any run of epochs
    stay within one of each other.
    """
    if batches_per_epoch < 1 or batch_size < 1:
        raise InvalidArgumentError(
            f"batches_per_epoch and batch_size must be >= 1, "
            f"got {batches_per_epoch} and {batch_size}")
    if epoch < 0:
        raise InvalidArgumentError(f"epoch must be >= 0, got {epoch}")
    n = len(index)
    if n == 0:
        raise EmptyDatasetError("cannot plan batches over an empty index")
    count = batches_per_epoch * batch_size
    start = epoch * count
    parts = []
    for cycle in range(start // n, (start + count - 1) // n + 1):
        rng = np.random.Generator(np.random.PCG64(permutation_seed(master_seed, cycle)))
        perm = rng.permutation(n)
        lo = max(start - cycle * n, 0)
        hi = min(start + count - cycle * n, n)
        parts.append(perm[lo:hi])
    return np.concatenate(parts).astype(np.int64)


def next_batch(index: DatasetIndex, plan: np.ndarray, batch: int, batch_size: int,
               config: AugmentConfig, master_seed: int, epoch: int) -> Batch:
    """Load, augment, and stack the planned samples of one batch.

    Slot s of the batch is augmented with the seed derived from
    (master_seed, epoch, batch, s), so batches may be computed in any order
    or in parallel without changing a single byte.
    """
    lo = batch * batch_size
    hi = lo + batch_size
    if lo < 0 or hi > len(plan):
        raise InvalidArgumentError(
            f"plan of length {len(plan)} does not cover batch {batch} "
            f"(samples [{lo}, {hi}))")
    images = None
    labels = np.zeros((batch_size, index.num_classes), dtype=np.float32)
    first_path = ""
    for slot, sample_id in enumerate(plan[lo:hi]):
        path, label = index.samples[int(sample_id)]
        img = hsb.read_image(path)
        seed = sample_seed(master_seed, epoch, batch, slot)
        out = augment(LabeledSample(img, label), config, seed)
        if images is None:
            images = np.empty((batch_size,) + out.image.shape, dtype=np.float32)
            first_path = path
        elif out.image.shape != images.shape[1:]:
            raise ShapeMismatchError(
                f"sample {path} has shape {out.image.shape} but {first_path} "
                f"has shape {tuple(images.shape[1:])}")
        images[slot] = out.image.data
        labels[slot] = one_hot(out.label_index, index.num_classes)
    return Batch(images=images, labels=labels)


def iter_batches(index: DatasetIndex, config: AugmentConfig, batch_size: int,
                 batches_per_epoch: int, epochs: int, master_seed: int,
                 prefetch: int = 0):
    """Yield every batch of ``epochs`` epochs in (epoch, batch) order.

    ``prefetch`` > 0 computes that many batches ahead on worker threads;
    the yielded stream is identical either way.
    """
    jobs = [(e, b) for e in range(epochs) for b in range(batches_per_epoch)]
    plans: dict[int, np.ndarray] = {}

    def compute(job):
        e, b = job
        if e not in plans:
            plans[e] = epoch_plan(index, batches_per_epoch, batch_size,
                                  master_seed, e)
        return next_batch(index, plans[e], b, batch_size, config, master_seed, e)

    if prefetch <= 0:
        for job in jobs:
            yield compute(job)
        return

    from concurrent.futures import ThreadPoolExecutor
    # Plans are built up-front so threads never mutate shared state.
    for e in range(epochs):
        plans[e] = epoch_plan(index, batches_per_epoch, batch_size, master_seed, e)
    with ThreadPoolExecutor(max_workers=prefetch) as pool:
        pending = [pool.submit(compute, job) for job in jobs[:prefetch]]
        next_submit = prefetch
        while pending:
            fut = pending.pop(0)
            if next_submit < len(jobs):
                pending.append(pool.submit(compute, jobs[next_submit]))
                next_submit += 1
            yield fut.result()


def batch_file_name(epoch: int, batch: int) -> str:
    return f"epoch{epoch:04d}_batch{batch:04d}.hsbb"


_WORKER: dict = {}


def _generate_init(root, out_dir, config, batch_size, batches_per_epoch, master_seed):
    _WORKER.update(index=index_dataset(root), out_dir=Path(out_dir), config=config,
                   batch_size=batch_size, batches_per_epoch=batches_per_epoch,
                   master_seed=master_seed, plans={})


def _generate_one(job: tuple[int, int]) -> str:
    epoch, batch = job
    w = _WORKER
    plans = w["plans"]
    if epoch not in plans:
        plans[epoch] = epoch_plan(w["index"], w["batches_per_epoch"],
                                  w["batch_size"], w["master_seed"], epoch)
    out = next_batch(w["index"], plans[epoch], batch, w["batch_size"],
                     w["config"], w["master_seed"], epoch)
    name = batch_file_name(epoch, batch)
    hsb.write_batch(w["out_dir"] / name, out.images, out.labels)
    return name


def generate_dataset(root: str | Path, out_dir: str | Path, config: AugmentConfig,
                     batch_size: int, batches_per_epoch: int, epochs: int,
                     master_seed: int, workers: int = 1) -> list[str]:
    """Write every batch of ``epochs`` epochs as HSBB files under out_dir.

    The output tree is byte-identical for any worker count; with more than
    one worker, batches are distributed over processes that each index the
    dataset once and own their output files outright.
    """
    if epochs < 1:
        raise InvalidArgumentError(f"epochs must be >= 1, got {epochs}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    index_dataset(root)  # fail fast on dataset problems before forking
    jobs = [(e, b) for e in range(epochs) for b in range(batches_per_epoch)]
    init_args = (root, out_dir, config, batch_size, batches_per_epoch, master_seed)
    if workers <= 1:
        _generate_init(*init_args)
        try:
            return [_generate_one(job) for job in jobs]
        finally:
            _WORKER.clear()
    with ProcessPoolExecutor(max_workers=workers, initializer=_generate_init,
                             initargs=init_args) as pool:
        return list(pool.map(_generate_one, jobs, chunksize=8))


def default_workers() -> int:
    return os.cpu_count() or 1
