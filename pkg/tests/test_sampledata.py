import numpy as np
import pytest

from xfse.sampledata import CORPUS_NAMES, corpus, natural_image, synthetic_natural


def test_corpus_shapes_and_range():
    images = corpus()
    assert set(images) == set(CORPUS_NAMES)
    for name, img in images.items():
        assert img.shape == (512, 512), name
        assert img.dtype == np.float64
        assert img.min() >= 0.0 and img.max() <= 255.0
        assert np.array_equal(img, np.floor(img))  # integer levels


def test_images_deterministic():
    for name in CORPUS_NAMES:
        assert np.array_equal(natural_image(name), natural_image(name))


def test_unknown_name():
    with pytest.raises(ValueError):
        natural_image("lenna")


def test_synthetic_fallback_properties():
    img = synthetic_natural(seed=3, size=128)
    assert img.shape == (128, 128)
    assert img.min() >= 0.0 and img.max() <= 255.0
    # decaying spectrum: low-frequency band carries more energy than high
    spec = np.abs(np.fft.fft2(img - img.mean())) ** 2
    f = np.fft.fftfreq(128)
    rad = np.hypot(f[:, None], f[None, :])
    low = spec[(rad > 0) & (rad < 0.1)].mean()
    high = spec[rad > 0.35].mean()
    assert low > 30 * high
