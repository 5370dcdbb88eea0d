"""Random number generation.

All randomness flows through numpy ``Generator`` objects backed by PCG64.
Independent streams are derived from a master seed plus an integer key via
``SeedSequence(master, spawn_key=key)``, so a trial's stream depends only on
its key and never on scheduling order.
"""

from __future__ import annotations

import os

import numpy as np

SEED_ENV = "CYCLETURAN_SEED"
DEFAULT_SEED = 0


def default_seed() -> int:
    """Seed from the ``CYCLETURAN_SEED`` environment variable, else 0."""
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return DEFAULT_SEED
    return int(raw)


def make_rng(seed: int | None = None) -> np.random.Generator:
    if seed is None:
        seed = default_seed()
    return np.random.Generator(np.random.PCG64(int(seed)))


def stream(master: int, *key: int) -> np.random.Generator:
    """Generator for the substream identified by ``key`` under ``master``."""
    ss = np.random.SeedSequence(int(master), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def tag(name: str) -> int:
    """Stable small integer for a string label (used inside stream keys)."""
    h = 0
    for ch in name.encode():
        h = (h * 131 + ch) % 2_147_483_647
    return h
