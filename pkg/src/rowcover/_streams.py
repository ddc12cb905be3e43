"""Deterministic random-stream derivation for the simulation modules.

Every stochastic routine in this package draws from a Philox counter-based
generator keyed by (seed, *path) through numpy's SeedSequence spawn
mechanism.  A stream is therefore a pure function of the user seed and a
small integer path (consumer tag, then trial index or grid coordinate),
so results are bit-reproducible regardless of execution order, chunking,
or worker count: any scheduler that assigns trial t its stream gets the
same numbers.

Path tags are centralized here so no two consumers can collide.
"""

from __future__ import annotations

import operator

import numpy as np

from .errors import DomainError

# Consumer tags: the first path component. Keep values stable; changing
# them changes every downstream stream.
COVER_TRIAL = 1
COVERAGE_TRIAL = 2
PATTERN = 3
VALUES = 4
ORTHOGONAL = 5
SWEEP_POINT = 6
INSTANCE = 7

_SEED_MAX = 2**64 - 1


def checked_seed(seed: object) -> int:
    """Validate and normalize a user-facing seed to an unsigned 64-bit int."""
    try:
        value = operator.index(seed)
    except TypeError:
        raise DomainError(f"seed must be an integer, got {seed!r}") from None
    if not 0 <= value <= _SEED_MAX:
        raise DomainError(f"seed must fit in an unsigned 64-bit integer, got {value}")
    return value


def spawn_generator(seed: int, *path: int) -> np.random.Generator:
    """Generator for the stream addressed by (seed, *path)."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=path)
    return np.random.Generator(np.random.Philox(sequence))


def derive_seed(seed: int, *path: int) -> int:
    """Fold (seed, *path) into a plain unsigned 64-bit sub-seed.

    Used where a child computation takes a seed argument of its own (sweep
    points, per-trial instances) so its streams chain through the same
    derivation tree.
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=path)
    return int(sequence.generate_state(1, np.uint64)[0])
