"""Smoke-test training loop: prove the generator feeds a real model.

This is integration plumbing, not a benchmark — the model is deliberately
tiny (a few thousand parameters) and the only claim checked is that loss
goes down at all when training on the augmented stream.
"""
from __future__ import annotations

from pathlib import Path

from hyperaug import AugmentConfig

from .generator import create_generator


def full_augmentation() -> AugmentConfig:
    """The whole menu switched on: both flips, rotation up to 90 degrees,
    translation up to a quarter of each dimension, zoom in [1/1.5, 1.5],
    shear coefficient up to 0.05, speckle variance 0.010."""
    return AugmentConfig(
        flip_horizontal=True,
        flip_vertical=True,
        max_rotation=90.0,
        max_translation=0.25,
        max_zoom=1.5,
        max_shear=0.05,
        speckle_variance=0.010,
    )


def smoke_train(dataset_root: str | Path, steps: int, *,
                batch_size: int = 32, batches_per_epoch: int = 64,
                master_seed: int = 7, model_seed: int = 0) -> float:
    """Train a small classifier on augmented batches; return the final loss.

    Measures loss on a fixed probe batch before and after ``steps``
    optimizer steps and raises if training made things no better
    (``steps=0`` just returns the initial measurement). Dataset problems
    raise during generator construction.
    """
    import tensorflow as tf  # deferred: the generator works without TF

    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")

    gen = create_generator(dataset_root, full_augmentation(),
                           batch_size, batches_per_epoch, master_seed)
    probe_images, probe_labels = next(gen)

    tf.keras.utils.set_random_seed(model_seed)
    model = tf.keras.Sequential([
        tf.keras.layers.Input(shape=probe_images.shape[1:]),
        tf.keras.layers.Conv2D(16, 3, padding="same", activation="relu"),
        tf.keras.layers.GlobalAveragePooling2D(),
        tf.keras.layers.Dense(32, activation="relu"),
        tf.keras.layers.Dense(gen.num_classes, activation="softmax"),
    ])
    model.compile(optimizer=tf.keras.optimizers.Adam(3e-3),
                  loss="categorical_crossentropy")

    initial = float(model.evaluate(probe_images, probe_labels, verbose=0))
    if steps == 0:
        return initial

    for _ in range(steps):
        images, labels = next(gen)
        model.train_on_batch(images, labels)

    final = float(model.evaluate(probe_images, probe_labels, verbose=0))
    if not final < initial:
        raise RuntimeError(
            f"smoke training did not reduce loss over {steps} steps: "
            f"initial {initial:.6f}, final {final:.6f}")
    return final
