"""Deterministic, nested training subsets over the fraction grid.

For a fixed seed, the subset at fraction f1 is contained in the subset at
any f2 >= f1: all fractions share one seeded permutation of the training
indices and differ only in how long a prefix they keep. That nesting keeps
learning curves smooth, so area differences between language pairs reflect
data quantity rather than sampling noise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from ._rng import permutation

FRACTION_GRID = (0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


def fraction_grid() -> tuple[float, ...]:
    """The canonical evaluation grid: 20% to 100% in steps of 10%."""
    return FRACTION_GRID


@dataclass
class SubsetManifest:
    """A reproducible selection of training-pair indices."""

    fraction: float
    seed: int
    n_train: int
    indices: list[int]
    src: str | None = None
    tgt: str | None = None

    def to_dict(self) -> dict:
        return {
            "src": self.src,
            "tgt": self.tgt,
            "fraction": self.fraction,
            "seed": self.seed,
            "n_train": self.n_train,
            "indices": self.indices,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "SubsetManifest":
        return cls(
            fraction=d["fraction"],
            seed=d["seed"],
            n_train=d["n_train"],
            indices=list(d["indices"]),
            src=d.get("src"),
            tgt=d.get("tgt"),
        )

    def write(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_json())
            fh.write("\n")

    @classmethod
    def read(cls, path: str | Path) -> "SubsetManifest":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def subsample(n_train: int, fraction: float, seed: int,
              src: str | None = None, tgt: str | None = None) -> SubsetManifest:
    """Select ceil(fraction * n_train) training indices.

    The selection is the prefix of one SplitMix64-seeded permutation of
    range(n_train), so subsets are nested across fractions for a fixed seed
    and identical across runs and platforms. Indices are returned sorted.
    """
    if n_train < 1:
        raise ValueError(f"n_train must be >= 1, got {n_train}")
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    k = math.ceil(fraction * n_train)
    order = permutation(n_train, seed)
    return SubsetManifest(
        fraction=fraction,
        seed=seed,
        n_train=n_train,
        indices=sorted(order[:k]),
        src=src,
        tgt=tgt,
    )
