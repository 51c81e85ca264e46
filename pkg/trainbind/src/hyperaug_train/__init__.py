"""TensorFlow-side binding for the hyperaug batch generator.

``create_generator`` turns a class-per-subfolder dataset into an endless
iterator of augmented ``(images, labels)`` numpy batches that are
bit-identical to what ``hyperaug generate`` writes for the same seed, and
``smoke_train`` runs a minimal Keras classifier over that stream to prove
the plumbing end to end. TensorFlow is only imported when training is
actually requested.
"""
from .generator import GeneratorHandle, create_generator
from .synth import make_synthetic_dataset
from .train import full_augmentation, smoke_train

__all__ = [
    "GeneratorHandle",
    "create_generator",
    "full_augmentation",
    "make_synthetic_dataset",
    "smoke_train",
]

__version__ = "0.1.0"
