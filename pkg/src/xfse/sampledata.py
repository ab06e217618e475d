"""Natural test images for experiments, tests and benchmarks.

Uses the grayscale photographs bundled with scikit-image when it is
installed (camera, moon, gray astronaut). Without scikit-image a
deterministic synthetic stand-in with a natural-image-like decaying
spectrum is generated instead, so the package stays runnable anywhere.
"""

from __future__ import annotations

import numpy as np

__all__ = ["CORPUS_NAMES", "natural_image", "corpus", "synthetic_natural"]

CORPUS_NAMES = ("camera", "moon", "astronaut_gray")


def _from_skimage(name: str) -> np.ndarray | None:
    try:
        from skimage import data
    except ImportError:
        return None
    if name == "camera":
        return data.camera().astype(np.float64)
    if name == "moon":
        return data.moon().astype(np.float64)
    if name == "astronaut_gray":
        rgb = data.astronaut().astype(np.float64)
        gray = 0.2125 * rgb[..., 0] + 0.7154 * rgb[..., 1] + 0.0721 * rgb[..., 2]
        return np.floor(gray + 0.5).clip(0, 255)
    raise ValueError(f"unknown corpus image {name!r}; choose from {CORPUS_NAMES}")


def synthetic_natural(seed: int, size: int = 512) -> np.ndarray:
    """Deterministic natural-looking image: 1/f-shaped noise plus geometry."""
    rng = np.random.default_rng(seed)
    spectrum = np.fft.fft2(rng.standard_normal((size, size)))
    f = np.fft.fftfreq(size)
    radius = np.hypot(f[:, None], f[None, :])
    spectrum *= 1.0 / (0.004 + radius) ** 1.2
    img = np.fft.ifft2(spectrum).real
    lo, hi = np.percentile(img, (1, 99))
    img = np.clip((img - lo) / (hi - lo), 0.0, 1.0) * 200.0 + 25.0
    # a few hard structures so edges exist
    yy, xx = np.mgrid[0:size, 0:size]
    disc = (yy - size * 0.35) ** 2 + (xx - size * 0.6) ** 2 < (size * 0.12) ** 2
    img[disc] = 0.7 * img[disc] + 60.0
    band = (xx > size * 0.15) & (xx < size * 0.22)
    img[band] = 0.4 * img[band] + 20.0
    return np.floor(img.clip(0, 255) + 0.5)


def natural_image(name: str) -> np.ndarray:
    """Corpus image by name as a float64 grid of 8-bit levels."""
    if name not in CORPUS_NAMES:
        raise ValueError(f"unknown corpus image {name!r}; choose from {CORPUS_NAMES}")
    img = _from_skimage(name)
    if img is None:
        img = synthetic_natural(seed=CORPUS_NAMES.index(name) + 1)
    return img


def corpus() -> dict[str, np.ndarray]:
    """The bundled natural-image corpus, keyed by name."""
    return {name: natural_image(name) for name in CORPUS_NAMES}
