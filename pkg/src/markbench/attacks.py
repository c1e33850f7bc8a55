"""Deterministic, seeded image attacks.

Every attack maps a [0, 1] grayscale image to another one of the same shape,
clamped back into range.  Stochastic attacks (gaussian, saltpepper, speckle)
draw from the counter-based stream in :mod:`markbench.rng`, one draw per
pixel index, so a given (image, parameters, seed) triple is bit-reproducible
anywhere.

Attack descriptions serialize to the flat grammar
``name:key=value[,key=value...]``, e.g. ``gaussian:mean=0.0,var=0.001,seed=7``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import rng
from .errors import ParamError, ParseError

# machine epsilon guard in the contrast-stretch denominator
_EPS = 2.0**-52


def _clamp01(img: np.ndarray) -> np.ndarray:
    return np.clip(img, 0.0, 1.0)


def _as_image(img: np.ndarray) -> np.ndarray:
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ParamError(f"expected a 2-D image, got shape {img.shape}")
    return img


def gaussian_noise(img: np.ndarray, mean: float, variance: float, seed: int) -> np.ndarray:
    """Additive white gaussian noise with the given mean and variance."""
    img = _as_image(img)
    if variance < 0:
        raise ParamError(f"variance must be >= 0, got {variance}")
    noise = mean + math.sqrt(variance) * rng.normals(seed, img.size)
    return _clamp01(img + noise.reshape(img.shape))


def salt_pepper(img: np.ndarray, density: float, seed: int) -> np.ndarray:
    """Forces a `density` fraction of pixels to pure black or white.

    Each pixel is hit independently with probability `density` and then goes
    to 0 or 1 with even odds; a single uniform draw decides both.
    """
    img = _as_image(img)
    if not 0.0 <= density <= 1.0:
        raise ParamError(f"density must be in [0, 1], got {density}")
    u = rng.uniforms(seed, img.size).reshape(img.shape)
    out = img.copy()
    out[u < density / 2.0] = 0.0
    out[(u >= density / 2.0) & (u < density)] = 1.0
    return out


def speckle(img: np.ndarray, variance: float, seed: int) -> np.ndarray:
    """Multiplicative noise: out = img + n * img, n zero-mean uniform.

    n is uniform on [-sqrt(3 v), +sqrt(3 v)], which has variance v.
    """
    img = _as_image(img)
    if variance < 0:
        raise ParamError(f"variance must be >= 0, got {variance}")
    amp = math.sqrt(3.0 * variance)
    n = (rng.uniforms(seed, img.size) * 2.0 - 1.0) * amp
    return _clamp01(img + n.reshape(img.shape) * img)


def negative(img: np.ndarray) -> np.ndarray:
    """Photographic negative, 1 - f."""
    return 1.0 - _as_image(img)


def adjust_gamma(img: np.ndarray, gamma: float) -> np.ndarray:
    """Power-law remap f^gamma; < 1 brightens, > 1 darkens."""
    if gamma <= 0:
        raise ParamError(f"gamma must be > 0, got {gamma}")
    return _clamp01(np.power(_as_image(img), gamma))


def log_transform(img: np.ndarray, c: float) -> np.ndarray:
    """Logarithmic remap c * ln(1 + f); c = 1/ln 2 maps [0,1] onto itself."""
    if c < 0:
        raise ParamError(f"c must be >= 0, got {c}")
    return _clamp01(c * np.log1p(_as_image(img)))


def contrast_stretch(img: np.ndarray, m: float, e: float) -> np.ndarray:
    """Sigmoid stretch 1 / (1 + (m / (f + eps))^e) centred at intensity m."""
    if not 0.0 < m <= 1.0:
        raise ParamError(f"m must be in (0, 1], got {m}")
    if e <= 0:
        raise ParamError(f"e must be > 0, got {e}")
    img = _as_image(img)
    return _clamp01(1.0 / (1.0 + (m / (img + _EPS)) ** e))


def gaussian_blur(img: np.ndarray, sd: float) -> np.ndarray:
    """Separable gaussian blur, radius ceil(3 sd), replicate borders."""
    img = _as_image(img)
    if sd <= 0:
        raise ParamError(f"sd must be > 0, got {sd}")
    kernel = blur_kernel(sd)
    r = kernel.size // 2
    padded = np.pad(img, ((0, 0), (r, r)), mode="edge")
    out = np.zeros_like(img)
    for j, weight in enumerate(kernel):
        out += weight * padded[:, j : j + img.shape[1]]
    padded = np.pad(out, ((r, r), (0, 0)), mode="edge")
    out = np.zeros_like(img)
    for j, weight in enumerate(kernel):
        out += weight * padded[j : j + img.shape[0], :]
    return _clamp01(out)


def blur_kernel(sd: float) -> np.ndarray:
    """Normalized 1-D gaussian kernel used by gaussian_blur."""
    r = math.ceil(3.0 * sd)
    x = np.arange(-r, r + 1, dtype=np.float64)
    k = np.exp(-(x**2) / (2.0 * sd * sd))
    return k / k.sum()


def hist_eq(img: np.ndarray, bins: int = 256) -> np.ndarray:
    """Histogram equalization over `bins` equal-width intensity levels."""
    img = _as_image(img)
    if bins < 2:
        raise ParamError(f"bins must be >= 2, got {bins}")
    levels = np.clip((img * bins).astype(np.int64), 0, bins - 1)
    hist = np.bincount(levels.reshape(-1), minlength=bins)
    cdf = np.cumsum(hist) / img.size
    return cdf[levels]


# --- tagged attack descriptions -------------------------------------------

# canonical parameter order per attack; stochastic ones also carry a seed
_PARAMS: dict[str, tuple[str, ...]] = {
    "gaussian": ("mean", "var"),
    "saltpepper": ("density",),
    "speckle": ("var",),
    "negative": (),
    "gamma": ("gamma",),
    "log": ("c",),
    "contraststretch": ("m", "e"),
    "blur": ("sd",),
    "histeq": ("bins",),
}
_STOCHASTIC = frozenset({"gaussian", "saltpepper", "speckle"})
_INT_PARAMS = frozenset({"bins"})

# closed parameter domains, checked when a spec is built
_DOMAIN = {
    ("gaussian", "var"): lambda v: v >= 0,
    ("saltpepper", "density"): lambda v: 0 <= v <= 1,
    ("speckle", "var"): lambda v: v >= 0,
    ("gamma", "gamma"): lambda v: v > 0,
    ("log", "c"): lambda v: v >= 0,
    ("contraststretch", "m"): lambda v: 0 < v <= 1,
    ("contraststretch", "e"): lambda v: v > 0,
    ("blur", "sd"): lambda v: v > 0,
    ("histeq", "bins"): lambda v: v >= 2 and v == int(v),
}


@dataclass(frozen=True)
class AttackSpec:
    """One attack plus its parameters; `seed` matters only for stochastic kinds."""

    name: str
    params: tuple[tuple[str, float], ...] = ()
    seed: int = 0

    def __post_init__(self) -> None:
        if self.name not in _PARAMS:
            raise ParamError(f"unknown attack {self.name!r}")
        expected = _PARAMS[self.name]
        got = tuple(k for k, _ in self.params)
        if got != expected:
            raise ParamError(
                f"{self.name} takes parameters {list(expected)}, got {list(got)}"
            )
        for key, value in self.params:
            check = _DOMAIN.get((self.name, key))
            if check is not None and not check(value):
                raise ParamError(f"{self.name}: {key}={value} out of range")
        if self.seed < 0:
            raise ParamError(f"seed must be >= 0, got {self.seed}")
        if self.name not in _STOCHASTIC and self.seed != 0:
            # deterministic attacks ignore seeds; normalize for round-tripping
            object.__setattr__(self, "seed", 0)

    def __getitem__(self, key: str) -> float:
        for k, v in self.params:
            if k == key:
                return v
        raise KeyError(key)

    @property
    def stochastic(self) -> bool:
        return self.name in _STOCHASTIC

    def with_seed(self, seed: int) -> "AttackSpec":
        return replace(self, seed=seed)

    def params_text(self) -> str:
        """The key=value part of the grammar, seed excluded."""
        items = []
        for k, v in self.params:
            items.append(f"{k}={int(v)}" if k in _INT_PARAMS else f"{k}={v!r}")
        return ",".join(items)

    def render(self) -> str:
        """Serialize to the name:key=value,... grammar."""
        text = self.params_text()
        if self.stochastic:
            text = f"{text},seed={self.seed}" if text else f"seed={self.seed}"
        return f"{self.name}:{text}" if text else self.name


def make_spec(name: str, seed: int = 0, **params: float) -> AttackSpec:
    """Build an AttackSpec with parameters given in any order."""
    if name not in _PARAMS:
        raise ParamError(f"unknown attack {name!r}")
    missing = [k for k in _PARAMS[name] if k not in params]
    extra = [k for k in params if k not in _PARAMS[name]]
    if missing or extra:
        raise ParamError(
            f"{name} takes parameters {list(_PARAMS[name])}; "
            f"missing {missing}, unexpected {extra}"
        )
    ordered = tuple((k, float(params[k])) for k in _PARAMS[name])
    return AttackSpec(name=name, params=ordered, seed=seed)


def parse_spec(text: str) -> AttackSpec:
    """Parse the name:key=value,... grammar into an AttackSpec."""
    text = text.strip()
    name, _, rest = text.partition(":")
    name = name.strip()
    if name not in _PARAMS:
        raise ParseError(f"unknown attack {name!r} in spec {text!r}")
    params: dict[str, float] = {}
    seed = 0
    if rest.strip():
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or not key:
                raise ParseError(f"bad key=value item {item!r} in spec {text!r}")
            try:
                if key == "seed":
                    seed = int(value)
                else:
                    params[key] = float(value)
            except ValueError as exc:
                raise ParseError(f"bad value in {item!r}") from exc
    try:
        return make_spec(name, seed=seed, **params)
    except ParamError as exc:
        raise ParseError(str(exc)) from exc


def apply_attack(img: np.ndarray, spec: AttackSpec) -> np.ndarray:
    """Run one attack described by an AttackSpec."""
    if spec.name == "gaussian":
        return gaussian_noise(img, spec["mean"], spec["var"], spec.seed)
    if spec.name == "saltpepper":
        return salt_pepper(img, spec["density"], spec.seed)
    if spec.name == "speckle":
        return speckle(img, spec["var"], spec.seed)
    if spec.name == "negative":
        return negative(img)
    if spec.name == "gamma":
        return adjust_gamma(img, spec["gamma"])
    if spec.name == "log":
        return log_transform(img, spec["c"])
    if spec.name == "contraststretch":
        return contrast_stretch(img, spec["m"], spec["e"])
    if spec.name == "blur":
        return gaussian_blur(img, spec["sd"])
    if spec.name == "histeq":
        return hist_eq(img, int(spec["bins"]))
    raise ParamError(f"unknown attack {spec.name!r}")
