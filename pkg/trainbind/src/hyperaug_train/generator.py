"""Iterator binding over the hyperaug batch stream.

The handle owns nothing but configuration and a cursor; all planning,
loading and augmentation happens in hyperaug itself, and the arrays it
produced are handed to the consumer as-is — the binding never copies a
batch buffer.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from hyperaug import AugmentConfig, Batch, DatasetIndex, epoch_plan, index_dataset, next_batch


class GeneratorHandle:
    """Endless iterator of ``(images, labels)`` training batches.

    Yields the exact arrays hyperaug builds for each batch — float32
    ``(batch, H, W, C)`` images and float32 one-hot ``(batch, num_classes)``
    labels — in the same order ``next_batch`` would produce them for the
    same master seed, batch by batch, epoch after epoch without end.

    ``epoch`` and ``batch`` are the cursor of the *next* batch to be
    yielded; ``current`` keeps the most recently yielded batch so callers
    can check buffer identity or re-inspect it without advancing.

    A handle is meant for a single consumer thread.
    """

    def __init__(self, dataset_root: str | Path, config: AugmentConfig,
                 batch_size: int, batches_per_epoch: int, master_seed: int):
        self._root = str(dataset_root)
        self._config = config
        self._batch_size = int(batch_size)
        self._batches_per_epoch = int(batches_per_epoch)
        self._master_seed = int(master_seed)
        self._index: DatasetIndex = index_dataset(dataset_root)
        self.epoch = 0
        self.batch = 0
        self.current: Batch | None = None
        # Plan eagerly so bad arguments surface at construction, not on
        # the first next() deep inside a training loop.
        self._plan: np.ndarray = epoch_plan(
            self._index, self._batches_per_epoch, self._batch_size,
            self._master_seed, 0)
        self._plan_epoch = 0

    @property
    def num_classes(self) -> int:
        return self._index.num_classes

    @property
    def dataset_size(self) -> int:
        return len(self._index)

    def __iter__(self) -> "GeneratorHandle":
        return self

    def __next__(self) -> tuple[np.ndarray, np.ndarray]:
        if self._plan_epoch != self.epoch:
            self._plan = epoch_plan(
                self._index, self._batches_per_epoch, self._batch_size,
                self._master_seed, self.epoch)
            self._plan_epoch = self.epoch
        out = next_batch(self._index, self._plan, self.batch,
                         self._batch_size, self._config,
                         self._master_seed, self.epoch)
        self.current = out
        self.batch += 1
        if self.batch == self._batches_per_epoch:
            self.epoch += 1
            self.batch = 0
        return out.images, out.labels


def create_generator(dataset_root: str | Path, config: AugmentConfig,
                     batch_size: int, batches_per_epoch: int,
                     master_seed: int) -> GeneratorHandle:
    """Open an endless batch generator over a class-per-subfolder dataset.

    Indexing problems (missing root, empty classes) raise immediately with
    hyperaug's own error messages. Two generators created with equal
    arguments yield element-for-element identical streams, and the streams
    match what ``hyperaug generate`` writes to .hsbb files for the same
    configuration and seed.
    """
    return GeneratorHandle(dataset_root, config, batch_size,
                           batches_per_epoch, master_seed)
