"""Binary PGM (P5) reading and writing for 8-bit grayscale images.

Images are plain 2D float64 arrays holding luminance levels in [0, 255].
The pipeline keeps unclamped real values internally; clamping and rounding
to integer levels happen only when an image is written to disk.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "PgmFormatError",
    "UnsupportedPgmError",
    "read_pgm",
    "write_pgm",
    "quantize",
]


class PgmFormatError(ValueError):
    """Malformed PGM header or payload."""


class UnsupportedPgmError(ValueError):
    """Well-formed PGM that this reader does not handle (e.g. maxval != 255)."""


def _read_token(buf: bytes, pos: int) -> tuple[bytes, int]:
    """Return the next header token, skipping whitespace and # comments."""
    n = len(buf)
    while pos < n:
        c = buf[pos : pos + 1]
        if c == b"#":
            while pos < n and buf[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif c.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < n and not buf[pos : pos + 1].isspace():
        pos += 1
    if start == pos:
        raise PgmFormatError("unexpected end of PGM header")
    return buf[start:pos], pos


def read_pgm(path: str | os.PathLike) -> np.ndarray:
    """Read a binary PGM (P5, maxval 255) into a float64 image array.

    Integer sample levels are preserved exactly. Raises PgmFormatError on a
    malformed header, UnsupportedPgmError for non-P5 magic or maxval != 255,
    and OSError on a truncated payload.
    """
    with open(path, "rb") as fh:
        buf = fh.read()
    if len(buf) < 2:
        raise PgmFormatError("file too short to be a PGM")
    magic = buf[:2]
    if magic != b"P5":
        if magic in (b"P1", b"P2", b"P3", b"P4", b"P6"):
            raise UnsupportedPgmError(f"unsupported PNM variant {magic!r}; only binary P5 is handled")
        raise PgmFormatError(f"bad magic {magic!r}; not a PGM file")
    pos = 2
    fields = []
    for _ in range(3):
        tok, pos = _read_token(buf, pos)
        if not tok.isdigit():
            raise PgmFormatError(f"non-numeric header field {tok!r}")
        fields.append(int(tok))
    width, height, maxval = fields
    if width <= 0 or height <= 0:
        raise PgmFormatError(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedPgmError(f"maxval {maxval} not supported; expected 255")
    # exactly one whitespace byte separates the header from the payload
    if pos >= len(buf) or not buf[pos : pos + 1].isspace():
        raise PgmFormatError("missing whitespace after maxval")
    pos += 1
    payload = buf[pos : pos + width * height]
    if len(payload) < width * height:
        raise OSError(f"truncated PGM payload: expected {width * height} bytes, got {len(payload)}")
    samples = np.frombuffer(payload, dtype=np.uint8).astype(np.float64)
    return samples.reshape(height, width)


def quantize(img: np.ndarray) -> np.ndarray:
    """Clamp to [0, 255] and round to integer levels, ties away from zero.

    Returns a uint8 array; this is exactly the mapping applied by write_pgm.
    """
    clipped = np.clip(np.asarray(img, dtype=np.float64), 0.0, 255.0)
    # all values are >= 0 after clamping, so away-from-zero == floor(x + 0.5)
    return np.floor(clipped + 0.5).clip(0, 255).astype(np.uint8)


def write_pgm(img: np.ndarray, path: str | os.PathLike) -> None:
    """Write an image as binary PGM (P5, maxval 255).

    Samples are clamped to [0, 255] and rounded to the nearest integer,
    ties away from zero. Output bytes are deterministic.
    """
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2D grayscale image, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"empty image {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("image contains non-finite samples")
    height, width = arr.shape
    data = quantize(arr).tobytes()
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (width, height))
        fh.write(data)
