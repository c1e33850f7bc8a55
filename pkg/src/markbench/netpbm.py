"""Binary netpbm I/O: PGM (P5) covers and PBM (P4) logos.

Images travel through the toolkit as 2-D float64 arrays with intensities in
[0, 1]; quantization to 8-bit happens only here.  Logos are 2-D uint8 arrays
of {0, 1} where 1 means black (the PBM convention).
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, ParseError

LOGO_SIDE = 32

_WHITESPACE = frozenset(b" \t\r\n\v\f")
_HASH = ord("#")


def _tokens(data: bytes, start: int, count: int) -> tuple[list[int], int]:
    """Read `count` ASCII integer tokens, skipping whitespace and # comments.

    Returns the values and the offset of the first raster byte (one
    whitespace character past the last token).
    """
    vals: list[int] = []
    i = start
    n = len(data)
    while len(vals) < count:
        while i < n and (data[i] in _WHITESPACE or data[i] == _HASH):
            if data[i] == _HASH:
                nl = data.find(b"\n", i)
                if nl < 0:
                    raise ParseError("unterminated comment in header")
                i = nl + 1
            else:
                i += 1
        j = i
        while j < n and data[j] not in _WHITESPACE and data[j] != _HASH:
            j += 1
        tok = data[i:j]
        if not tok:
            raise ParseError("truncated header")
        try:
            vals.append(int(tok))
        except ValueError as exc:
            raise ParseError(f"bad header token {tok!r}") from exc
        i = j
    if i >= n or data[i] not in _WHITESPACE:
        raise ParseError("missing whitespace after header")
    return vals, i + 1


def load_pgm(data: bytes) -> np.ndarray:
    """Decode a binary PGM into a float64 image scaled to [0, 1]."""
    if data[:2] != b"P5":
        raise ParseError("not a binary PGM (expected magic P5)")
    (width, height, maxval), pos = _tokens(data, 2, 3)
    if width <= 0 or height <= 0:
        raise ParseError(f"bad dimensions {width}x{height}")
    if maxval <= 0 or maxval > 65535:
        raise ParseError(f"bad maxval {maxval}")
    bytes_per = 1 if maxval < 256 else 2
    need = width * height * bytes_per
    raster = data[pos : pos + need]
    if len(raster) < need:
        raise ParseError("truncated pixel data")
    dtype = np.uint8 if bytes_per == 1 else ">u2"
    px = np.frombuffer(raster, dtype=dtype, count=width * height)
    return px.reshape(height, width).astype(np.float64) / float(maxval)


def save_pgm(img: np.ndarray) -> bytes:
    """Encode an image as binary PGM, maxval 255, round-half-up quantization."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2 or img.size == 0:
        raise DimensionError(f"expected a non-empty 2-D image, got shape {img.shape}")
    height, width = img.shape
    quantized = np.floor(img * 255.0 + 0.5).astype(np.uint8)
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    return header + quantized.tobytes()


def load_pbm(data: bytes) -> np.ndarray:
    """Decode a binary PBM logo; must be LOGO_SIDE x LOGO_SIDE."""
    if data[:2] != b"P4":
        raise ParseError("not a binary PBM (expected magic P4)")
    (width, height), pos = _tokens(data, 2, 2)
    if width <= 0 or height <= 0:
        raise ParseError(f"bad dimensions {width}x{height}")
    if width != LOGO_SIDE or height != LOGO_SIDE:
        raise DimensionError(
            f"logo must be {LOGO_SIDE}x{LOGO_SIDE}, got {width}x{height}"
        )
    row_bytes = (width + 7) // 8
    need = row_bytes * height
    raster = data[pos : pos + need]
    if len(raster) < need:
        raise ParseError("truncated bitmap data")
    packed = np.frombuffer(raster, dtype=np.uint8).reshape(height, row_bytes)
    bits = np.unpackbits(packed, axis=1)[:, :width]
    return bits.astype(np.uint8)


def save_pbm(bits: np.ndarray) -> bytes:
    """Encode a logo as binary PBM (1 = black = payload bit 1)."""
    bits = np.asarray(bits)
    if bits.shape != (LOGO_SIDE, LOGO_SIDE):
        raise DimensionError(
            f"logo must be {LOGO_SIDE}x{LOGO_SIDE}, got shape {bits.shape}"
        )
    if not np.isin(bits, (0, 1)).all():
        raise ParseError("logo entries must be 0 or 1")
    packed = np.packbits(bits.astype(np.uint8), axis=1)
    header = f"P4\n{LOGO_SIDE} {LOGO_SIDE}\n".encode("ascii")
    return header + packed.tobytes()
