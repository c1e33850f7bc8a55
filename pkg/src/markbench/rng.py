"""Deterministic counter-based random streams.

All stochastic attacks draw from a splitmix64 counter stream: output i of a
stream is ``finalize(mix(seed) + (i + 1) * GOLDEN)`` where ``finalize`` is the
splitmix64 avalanche function.  There is no sequential state, so any slice of
a stream can be generated independently and the same (seed, index) pair always
yields the same value on every platform.

Normal variates are produced by applying the inverse normal CDF
(``scipy.special.ndtri``) to the uniform stream.  The generator name and
version below are stamped into benchmark reports; bump the version if either
the uniform stream or the normal method ever changes.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

PRNG_NAME = "splitmix64-counter"
PRNG_VERSION = "1"

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1

# uniforms are (x >> 11) * 2^-53, offset to the bin centre so they never hit
# 0.0 or 1.0 and ndtri stays finite
_INV253 = 2.0**-53
_HALF_STEP = 2.0**-54


def _finalize(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _stream_base(seed: int) -> np.uint64:
    return _finalize(np.array([seed & _MASK64], dtype=np.uint64))[0]


def raw64(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Words ``offset .. offset+count`` of the 64-bit stream for ``seed``."""
    base = _stream_base(seed)
    ctr = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    return _finalize(base + ctr * _GOLDEN)


def uniforms(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """i.i.d. uniforms on (0, 1), float64, one per counter index."""
    bits = raw64(seed, count, offset) >> np.uint64(11)
    return bits.astype(np.float64) * _INV253 + _HALF_STEP


def normals(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """i.i.d. standard normals via the inverse CDF of the uniform stream."""
    return ndtri(uniforms(seed, count, offset))
