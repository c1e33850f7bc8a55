"""Orthonormal transform kernels: multi-level 2-D Haar and the 4x4 block DCT.

Conventions, fixed because the payload layout depends on them:

* One Haar analysis step maps each 2x2 window [[a, b], [c, d]] to
  LL=(a+b+c+d)/2, LH=(a+b-c-d)/2, HL=(a-b+c-d)/2, HH=(a-b-c+d)/2, i.e. LH is
  low-pass along rows (horizontal) and high-pass down columns (vertical).
* Deeper levels recurse on LL only; detail triples are stored finest first.
* The DCT pair is the unitary 2-D DCT-II / DCT-III, C = M B M^T with M the
  orthonormal 4-point DCT-II matrix.
* Block partitioning scans raster order: left to right, then top to bottom.

Both transforms are energy preserving, so a coefficient change of some size
costs exactly that much pixel-domain L2 distortion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

BLOCK = 4

Subbands = tuple[np.ndarray, np.ndarray, np.ndarray]


@dataclass(frozen=True)
class WaveletPyramid:
    """Multi-level Haar decomposition.

    approx is the LL band at the deepest level; details[k] holds the
    (LH, HL, HH) triple of level k+1, so details[0] is the finest level and
    details[levels-1] sits at the same scale as approx.
    """

    levels: int
    approx: np.ndarray
    details: tuple[Subbands, ...]

    def deepest(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """The four subbands at the deepest level: (LL, LH, HL, HH)."""
        lh, hl, hh = self.details[self.levels - 1]
        return self.approx, lh, hl, hh


def _haar_step(x: np.ndarray) -> tuple[np.ndarray, Subbands]:
    a = x[0::2, 0::2]
    b = x[0::2, 1::2]
    c = x[1::2, 0::2]
    d = x[1::2, 1::2]
    ll = (a + b + c + d) * 0.5
    lh = (a + b - c - d) * 0.5
    hl = (a - b + c - d) * 0.5
    hh = (a - b - c + d) * 0.5
    return ll, (lh, hl, hh)


def _haar_step_inv(ll: np.ndarray, sub: Subbands) -> np.ndarray:
    lh, hl, hh = sub
    a = (ll + lh + hl + hh) * 0.5
    b = (ll + lh - hl - hh) * 0.5
    c = (ll - lh + hl - hh) * 0.5
    d = (ll - lh - hl + hh) * 0.5
    h, w = ll.shape
    out = np.empty((2 * h, 2 * w), dtype=np.float64)
    out[0::2, 0::2] = a
    out[0::2, 1::2] = b
    out[1::2, 0::2] = c
    out[1::2, 1::2] = d
    return out


def dwt2(img: np.ndarray, levels: int) -> WaveletPyramid:
    """Recursive orthonormal Haar analysis of a 2-D array."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise DimensionError(f"expected a 2-D array, got shape {img.shape}")
    if levels < 1:
        raise DimensionError(f"levels must be >= 1, got {levels}")
    h, w = img.shape
    if h % (1 << levels) or w % (1 << levels):
        raise DimensionError(
            f"dimensions {h}x{w} not divisible by 2^{levels}"
        )
    details: list[Subbands] = []
    ll = img
    for _ in range(levels):
        ll, sub = _haar_step(ll)
        details.append(sub)
    return WaveletPyramid(levels=levels, approx=ll, details=tuple(details))


def idwt2(pyr: WaveletPyramid) -> np.ndarray:
    """Exact synthesis inverse of dwt2; output is not clamped."""
    x = pyr.approx
    for sub in reversed(pyr.details):
        lh = sub[0]
        if lh.shape != x.shape:
            raise DimensionError(
                f"subband shape {lh.shape} does not match approx shape {x.shape}"
            )
        x = _haar_step_inv(x, sub)
    return x


def _dct_matrix(n: int) -> np.ndarray:
    k = np.arange(n)[:, None]
    x = np.arange(n)[None, :]
    m = np.cos(np.pi * (2 * x + 1) * k / (2 * n)) * np.sqrt(2.0 / n)
    m[0, :] = np.sqrt(1.0 / n)
    return m

DCT4 = _dct_matrix(BLOCK)
DCT4.setflags(write=False)


def dct2_4(block: np.ndarray) -> np.ndarray:
    """Unitary 2-D DCT-II of one 4x4 block (or a batch of them)."""
    return DCT4 @ np.asarray(block, dtype=np.float64) @ DCT4.T


def idct2_4(block: np.ndarray) -> np.ndarray:
    """Unitary 2-D DCT-III, the exact inverse of dct2_4."""
    return DCT4.T @ np.asarray(block, dtype=np.float64) @ DCT4


def partition4(mat: np.ndarray) -> np.ndarray:
    """Split a matrix into raster-ordered 4x4 blocks, shape (n, 4, 4)."""
    mat = np.asarray(mat, dtype=np.float64)
    if mat.ndim != 2:
        raise DimensionError(f"expected a 2-D array, got shape {mat.shape}")
    h, w = mat.shape
    if h % BLOCK or w % BLOCK:
        raise DimensionError(f"dimensions {h}x{w} not divisible by {BLOCK}")
    return (
        mat.reshape(h // BLOCK, BLOCK, w // BLOCK, BLOCK)
        .transpose(0, 2, 1, 3)
        .reshape(-1, BLOCK, BLOCK)
    )


def assemble4(blocks: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    """Reassemble raster-ordered 4x4 blocks into an h x w matrix."""
    blocks = np.asarray(blocks, dtype=np.float64)
    h, w = shape
    if h % BLOCK or w % BLOCK:
        raise DimensionError(f"dimensions {h}x{w} not divisible by {BLOCK}")
    n = (h // BLOCK) * (w // BLOCK)
    if blocks.shape != (n, BLOCK, BLOCK):
        raise DimensionError(
            f"expected {n} blocks of {BLOCK}x{BLOCK}, got shape {blocks.shape}"
        )
    return (
        blocks.reshape(h // BLOCK, w // BLOCK, BLOCK, BLOCK)
        .transpose(0, 2, 1, 3)
        .reshape(h, w)
    )
