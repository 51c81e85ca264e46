"""Deterministic seed derivation.

Every random decision in the library flows from a 64-bit master seed mixed
with integer coordinates (epoch, batch, sample slot, or shuffle cycle)
through the SplitMix64 finalizer. The mixing function is frozen: the
constants below are part of the on-disk reproducibility contract, so
regenerating a dataset with the same master seed yields identical bytes
on any platform.
"""
from __future__ import annotations

_MASK64 = 0xFFFFFFFFFFFFFFFF

# Domain tag separating shuffle-cycle seeds from per-sample seeds.
_PERMUTATION_TAG = 0x7065726D5F736571


def mix64(x: int) -> int:
    """One SplitMix64 step: increment by the golden gamma, then finalize."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def sample_seed(master_seed: int, epoch: int, batch: int, slot: int) -> int:
    """Seed for augmenting one sample: mix64 chained over all four fields."""
    h = mix64(master_seed & _MASK64)
    h = mix64(h ^ (epoch & _MASK64))
    h = mix64(h ^ (batch & _MASK64))
    h = mix64(h ^ (slot & _MASK64))
    return h


def permutation_seed(master_seed: int, cycle: int) -> int:
    """Seed for the ``cycle``-th dataset shuffle of a batch plan."""
    h = mix64((master_seed & _MASK64) ^ _PERMUTATION_TAG)
    return mix64(h ^ (cycle & _MASK64))
