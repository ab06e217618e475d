"""Block-loss masks: generation, file mapping, and per-sample classification.

A loss mask is a 2D uint8 array over the image grid with three states:
KNOWN (originally received), LOST (to be concealed) and RECONSTRUCTED
(concealed earlier in the current pass; assigned only by the concealment
driver, never present in masks read from or written to disk).

On disk masks are binary PGM files: 0 = lost, 255 = known.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "KNOWN",
    "LOST",
    "RECONSTRUCTED",
    "PatternSpec",
    "gen_mask",
    "mask_from_image",
    "mask_to_image",
    "loss_rate",
]

KNOWN = np.uint8(0)
LOST = np.uint8(1)
RECONSTRUCTED = np.uint8(2)

DISPERSED = "dispersed"
CONSECUTIVE = "consecutive"


@dataclass(frozen=True)
class PatternSpec:
    """Loss-pattern request.

    kind: "dispersed" (~25% of full blocks, isolated) or "consecutive"
    (checkerboard at block granularity, 50% of full blocks).
    seed is reserved for randomized studies; the built-in patterns are
    deterministic and ignore it.
    """

    kind: str
    block_size: int = 16
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in (DISPERSED, CONSECUTIVE):
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if self.block_size < 1:
            raise ValueError(f"block_size must be positive, got {self.block_size}")


def gen_mask(spec: PatternSpec, width: int, height: int) -> np.ndarray:
    """Generate a deterministic block-loss mask of the given image size.

    Only blocks fully inside the image are ever lost; partial border blocks
    stay KNOWN. Dispersed losses occupy every other block of every other
    block-row, with the column phase advancing one block every lost row, so
    no two lost blocks are edge-adjacent. Consecutive losses form the
    standard checkerboard over the block grid.
    """
    bs = spec.block_size
    if width < bs or height < bs:
        raise ValueError(f"image {width}x{height} smaller than one {bs}x{bs} block")
    mask = np.full((height, width), KNOWN, dtype=np.uint8)
    rows = height // bs
    cols = width // bs
    for i in range(rows):
        for j in range(cols):
            if spec.kind == CONSECUTIVE:
                lost = (i + j) % 2 == 0
            else:
                lost = i % 2 == 0 and (j + i // 2) % 2 == 0
            if lost:
                mask[i * bs : (i + 1) * bs, j * bs : (j + 1) * bs] = LOST
    return mask


def mask_from_image(mask_img: np.ndarray) -> np.ndarray:
    """Map an on-disk mask image (0 = lost, 255 = known) to mask states."""
    arr = np.asarray(mask_img)
    bad = ~np.isin(arr, (0, 255))
    if np.any(bad):
        values = np.unique(arr[bad])
        raise ValueError(f"mask image must contain only 0 and 255, found {values[:8].tolist()}")
    mask = np.where(arr == 0, LOST, KNOWN).astype(np.uint8)
    return mask


def mask_to_image(mask: np.ndarray) -> np.ndarray:
    """Render a mask back to image levels (lost -> 0, known -> 255).

    RECONSTRUCTED is a runtime-only state and may not be serialized.
    """
    mask = np.asarray(mask)
    if np.any(mask == RECONSTRUCTED):
        raise ValueError("mask contains RECONSTRUCTED samples; only KNOWN/LOST masks can be written")
    return np.where(mask == LOST, 0.0, 255.0)


def loss_rate(mask: np.ndarray) -> float:
    """Fraction of samples in the LOST state."""
    mask = np.asarray(mask)
    return float(np.count_nonzero(mask == LOST)) / mask.size
