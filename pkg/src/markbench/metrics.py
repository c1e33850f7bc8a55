"""Image and payload quality metrics.

Image metrics (mse, mae, psnr) compare two intensity rasters on the [0, 1]
domain; psnr uses peak value 1, so 40 dB corresponds to mse = 1e-4.  Payload
metrics (nc, ber) compare two binary bit matrices; nc correlates the
bits mapped to -1/+1 so an all-zero logo still correlates cleanly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError


def _paired(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a, b


def mse(a: np.ndarray, b: np.ndarray) -> float:
    """Mean squared error."""
    a, b = _paired(a, b)
    return float(np.mean((a - b) ** 2))


def mae(a: np.ndarray, b: np.ndarray) -> float:
    """Mean absolute error."""
    a, b = _paired(a, b)
    return float(np.mean(np.abs(a - b)))


def psnr(a: np.ndarray, b: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB; inf when the images are identical."""
    err = mse(a, b)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / err)


def ber(a: np.ndarray, b: np.ndarray) -> float:
    """Fraction of differing bits."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.mean(a != b))


def nc(a: np.ndarray, b: np.ndarray) -> float:
    """Normalized correlation of two bit matrices mapped to {-1, +1}."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    sa = a.astype(np.float64) * 2.0 - 1.0
    sb = b.astype(np.float64) * 2.0 - 1.0
    return float(np.sum(sa * sb) / a.size)


@dataclass(frozen=True)
class QualityReport:
    """Metric bundle for one comparison.

    nc and ber are None when no payload comparison was made (e.g. plain
    image-vs-image metrics).
    """

    mse: float
    mae: float
    psnr: float
    nc: float | None = None
    ber: float | None = None

    def to_dict(self) -> dict:
        """JSON-ready dict; the infinite psnr sentinel becomes the string "inf"."""
        out: dict = {
            "mse": self.mse,
            "mae": self.mae,
            "psnr": "inf" if math.isinf(self.psnr) else self.psnr,
        }
        if self.nc is not None:
            out["nc"] = self.nc
        if self.ber is not None:
            out["ber"] = self.ber
        return out


def image_report(a: np.ndarray, b: np.ndarray) -> QualityReport:
    """QualityReport for an image pair (no payload metrics)."""
    return QualityReport(mse=mse(a, b), mae=mae(a, b), psnr=psnr(a, b))
