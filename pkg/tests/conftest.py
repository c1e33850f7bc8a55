import pathlib

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import markbench as mb

settings.register_profile(
    "repo",
    derandomize=True,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

REPO = pathlib.Path(__file__).resolve().parent.parent
DATA = REPO / "data"


@pytest.fixture(scope="session")
def data_dir() -> pathlib.Path:
    return DATA


@pytest.fixture(scope="session")
def cover() -> np.ndarray:
    return mb.load_pgm((DATA / "cover.pgm").read_bytes())


@pytest.fixture(scope="session")
def logo() -> np.ndarray:
    return mb.load_pbm((DATA / "logo.pbm").read_bytes())


@pytest.fixture(scope="session")
def golden_bytes() -> bytes:
    return (DATA / "golden.json").read_bytes()


@pytest.fixture(scope="session")
def suite_config_text() -> str:
    return (DATA / "default_suite.cfg").read_text()


def smooth_cover(seed: int, side: int = 512) -> np.ndarray:
    """Random cover with structure above the carrier-block scale.

    Band-limited white noise (box-smoothed twice at a 33-pixel window),
    rescaled into [0.15, 0.85] so embedding never clamps.
    """
    from scipy.ndimage import uniform_filter

    rng = np.random.default_rng(seed)
    img = rng.random((side, side))
    for _ in range(2):
        img = uniform_filter(img, size=33, mode="wrap")
    lo, hi = img.min(), img.max()
    return 0.15 + 0.70 * (img - lo) / (hi - lo)


def random_logo(seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return (rng.random((32, 32)) < 0.5).astype(np.uint8)
