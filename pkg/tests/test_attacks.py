import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from markbench import AttackSpec, ParamError, ParseError, apply_attack, make_spec, parse_spec
from markbench.attacks import (
    adjust_gamma,
    blur_kernel,
    contrast_stretch,
    gaussian_blur,
    gaussian_noise,
    hist_eq,
    log_transform,
    negative,
    salt_pepper,
    speckle,
)

from naive import naive_gaussian_kernel2d


def random_image(seed: int, shape=(64, 64)) -> np.ndarray:
    return np.random.default_rng(seed).random(shape)


MID_GRAY = np.full((512, 512), 0.5)


# --- identity limits --------------------------------------------------------

def test_gaussian_zero_variance_zero_mean_is_identity():
    img = random_image(1)
    assert np.array_equal(gaussian_noise(img, 0.0, 0.0, seed=9), img)


def test_salt_pepper_zero_density_is_identity():
    img = random_image(2)
    assert np.array_equal(salt_pepper(img, 0.0, seed=9), img)


def test_speckle_zero_variance_is_identity():
    img = random_image(3)
    assert np.array_equal(speckle(img, 0.0, seed=9), img)


def test_gamma_one_is_identity():
    img = random_image(4)
    assert np.array_equal(adjust_gamma(img, 1.0), img)


def test_double_negative_is_identity():
    img = random_image(5)
    assert np.array_equal(negative(negative(img)), img)


# --- gaussian noise ---------------------------------------------------------

def test_gaussian_pure_mean_shift():
    img = random_image(6)
    out = gaussian_noise(img, 0.1, 0.0, seed=0)
    shifted = img + 0.1
    interior = shifted < 1.0
    assert np.array_equal(out[interior], shifted[interior])
    assert np.all(out[~interior] == 1.0)


def test_gaussian_sample_statistics():
    out = gaussian_noise(MID_GRAY, 0.0, 0.01, seed=101)
    diff = out - MID_GRAY
    assert abs(diff.mean()) <= 0.002
    assert 0.0095 <= diff.var() <= 0.0105


def test_gaussian_rejects_negative_variance():
    with pytest.raises(ParamError):
        gaussian_noise(MID_GRAY, 0.0, -1e-9, seed=0)


# --- salt & pepper ----------------------------------------------------------

def test_salt_pepper_full_density_saturates():
    out = salt_pepper(random_image(7), 1.0, seed=11)
    assert set(np.unique(out)) <= {0.0, 1.0}


def test_salt_pepper_affected_fraction():
    out = salt_pepper(MID_GRAY, 0.05, seed=102)
    affected = np.mean(out != MID_GRAY)
    assert 0.047 <= affected <= 0.053
    # both polarities show up in roughly equal measure
    salt = np.mean(out == 1.0)
    pepper = np.mean(out == 0.0)
    assert abs(salt - pepper) < 0.005


def test_salt_pepper_rejects_bad_density():
    with pytest.raises(ParamError):
        salt_pepper(MID_GRAY, 1.5, seed=0)


# --- speckle ----------------------------------------------------------------

def test_speckle_leaves_black_untouched():
    black = np.zeros((32, 32))
    assert np.array_equal(speckle(black, 0.25, seed=3), black)


def test_speckle_variance_on_mid_gray():
    out = speckle(MID_GRAY, 0.04, seed=103)
    assert abs(out.var() - 0.01) <= 0.0005


# --- intensity family -------------------------------------------------------

def test_negative_reverses_order():
    img = np.array([[0.1, 0.9], [0.4, 0.6]])
    out = negative(img)
    assert np.all((img[0, 0] < img[0, 1]) == (out[0, 0] > out[0, 1]))
    assert np.allclose(out, 1 - img)


def test_gamma_below_one_brightens():
    img = random_image(8)
    assert np.all(adjust_gamma(img, 0.8) >= img)
    assert np.all(adjust_gamma(img, 1.5) <= img)


def test_log_transform_endpoints():
    c = 1.0 / math.log(2.0)
    out = log_transform(np.array([[0.0, 1.0]]), c)
    assert out[0, 0] == 0.0
    assert out[0, 1] == 1.0


def test_log_transform_zero_constant_blacks_out():
    assert np.all(log_transform(random_image(9), 0.0) == 0.0)


def test_contrast_stretch_fixed_point_at_m():
    out = contrast_stretch(np.array([[0.5]]), m=0.5, e=4.0)
    assert abs(out[0, 0] - 0.5) <= 1e-12


def test_contrast_stretch_is_monotone():
    ramp = np.linspace(0.0, 1.0, 101).reshape(1, -1)
    out = contrast_stretch(ramp, m=0.4, e=3.0)
    assert np.all(np.diff(out[0]) >= 0)


@pytest.mark.parametrize(
    "fn",
    [
        lambda img: adjust_gamma(img, 0.7),
        lambda img: adjust_gamma(img, 2.5),
        lambda img: log_transform(img, 1.2),
        lambda img: contrast_stretch(img, 0.5, 4.0),
    ],
)
def test_intensity_maps_are_monotone(fn):
    for seed in range(5):
        values = np.sort(np.random.default_rng(seed).random(200)).reshape(1, -1)
        out = fn(values)
        assert np.all(np.diff(out[0]) >= 0)


# --- blur -------------------------------------------------------------------

def test_blur_kernel_normalized():
    for sd in (0.5, 1.0, 2.7):
        k = blur_kernel(sd)
        assert k.size == 2 * math.ceil(3 * sd) + 1
        assert abs(k.sum() - 1.0) <= 1e-12


def test_blur_keeps_constant_images():
    img = np.full((33, 47), 0.42)
    assert np.max(np.abs(gaussian_blur(img, 1.3) - img)) <= 1e-12


def test_blur_preserves_mean():
    for seed in range(5):
        img = random_image(seed, (64, 64))
        out = gaussian_blur(img, 1.0)
        assert abs(out.mean() - img.mean()) <= 1e-3


def test_blur_impulse_response_matches_kernel():
    img = np.zeros((65, 65))
    img[32, 32] = 1.0
    out = gaussian_blur(img, 1.0)
    kernel2d = naive_gaussian_kernel2d(1.0)
    assert abs(out[32, 32] - kernel2d[3, 3]) <= 1e-9
    r = 3
    patch = out[32 - r : 32 + r + 1, 32 - r : 32 + r + 1]
    assert np.max(np.abs(patch - kernel2d)) <= 1e-9


def test_blur_rejects_bad_sd():
    with pytest.raises(ParamError):
        gaussian_blur(MID_GRAY, 0.0)


# --- histogram equalization -------------------------------------------------

def test_hist_eq_constant_image_stays_constant():
    img = np.full((16, 16), 0.3)
    out = hist_eq(img, 256)
    assert np.unique(out).size == 1


def test_hist_eq_uniform_histogram_barely_moves():
    bins = 64
    # one pixel in each bin, at the bin centre
    img = ((np.arange(bins) + 0.5) / bins).reshape(8, 8)
    out = hist_eq(img, bins)
    assert np.max(np.abs(out - img)) <= 1.0 / bins


def test_hist_eq_two_valued_image():
    img = np.full((16, 16), 0.2)
    img[8:, :] = 0.8
    out = hist_eq(img, 256)
    low = np.unique(out[:8, :])
    high = np.unique(out[8:, :])
    assert low.size == 1 and high.size == 1
    assert low[0] == 0.5 and high[0] == 1.0


def test_hist_eq_is_monotone():
    for seed in range(5):
        img = random_image(seed, (32, 32))
        out = hist_eq(img, 256)
        order = np.argsort(img, axis=None, kind="stable")
        flat = out.reshape(-1)[order]
        assert np.all(np.diff(flat) >= 0)


def test_hist_eq_rejects_bad_bins():
    with pytest.raises(ParamError):
        hist_eq(MID_GRAY, 1)


# --- shared properties ------------------------------------------------------

EXTREME_SPECS = [
    make_spec("gaussian", seed=4, mean=0.3, var=0.25),
    make_spec("gaussian", seed=4, mean=-0.3, var=0.0),
    make_spec("saltpepper", seed=4, density=1.0),
    make_spec("speckle", seed=4, var=0.5),
    make_spec("negative"),
    make_spec("gamma", gamma=0.1),
    make_spec("gamma", gamma=5.0),
    make_spec("log", c=2.0),
    make_spec("contraststretch", m=0.01, e=8.0),
    make_spec("blur", sd=3.0),
    make_spec("histeq", bins=2),
]


@pytest.mark.parametrize("spec", EXTREME_SPECS, ids=lambda s: s.render())
def test_attacks_stay_in_range_and_shape(spec):
    img = random_image(10, (40, 56))
    out = apply_attack(img, spec)
    assert out.shape == img.shape
    assert out.min() >= 0.0
    assert out.max() <= 1.0


def test_stochastic_attacks_reproduce_and_differ_across_seeds():
    img = random_image(11)
    for name, params in [
        ("gaussian", dict(mean=0.0, var=0.01)),
        ("saltpepper", dict(density=0.05)),
        ("speckle", dict(var=0.01)),
    ]:
        for seed in range(10):
            a = apply_attack(img, make_spec(name, seed=seed, **params))
            b = apply_attack(img, make_spec(name, seed=seed, **params))
            c = apply_attack(img, make_spec(name, seed=seed + 1, **params))
            assert np.array_equal(a, b)
            assert np.any(a != c)


# --- spec grammar -----------------------------------------------------------

def test_parse_renders_known_examples():
    spec = parse_spec("gaussian:mean=0,var=0.001,seed=42")
    assert spec.name == "gaussian"
    assert spec["mean"] == 0.0 and spec["var"] == 0.001 and spec.seed == 42
    assert parse_spec(spec.render()) == spec

    spec = parse_spec("saltpepper:density=0.02,seed=7")
    assert spec["density"] == 0.02 and spec.seed == 7

    assert parse_spec("negative") == make_spec("negative")


def test_deterministic_attacks_normalize_seed():
    assert parse_spec("gamma:gamma=0.8,seed=5").seed == 0


@st.composite
def attack_specs(draw):
    name = draw(st.sampled_from(
        ["gaussian", "saltpepper", "speckle", "negative", "gamma", "log",
         "contraststretch", "blur", "histeq"]
    ))
    finite = {"allow_nan": False, "allow_infinity": False}
    params: dict[str, float] = {}
    if name == "gaussian":
        params["mean"] = draw(st.floats(-1, 1, **finite))
        params["var"] = draw(st.floats(0, 1, **finite))
    elif name == "saltpepper":
        params["density"] = draw(st.floats(0, 1, **finite))
    elif name == "speckle":
        params["var"] = draw(st.floats(0, 1, **finite))
    elif name == "gamma":
        params["gamma"] = draw(st.floats(0.01, 10, **finite))
    elif name == "log":
        params["c"] = draw(st.floats(0, 10, **finite))
    elif name == "contraststretch":
        params["m"] = draw(st.floats(0.001, 1, **finite))
        params["e"] = draw(st.floats(0.01, 16, **finite))
    elif name == "blur":
        params["sd"] = draw(st.floats(0.1, 5, **finite))
    elif name == "histeq":
        params["bins"] = draw(st.integers(2, 4096))
    seed = draw(st.integers(0, 2**63 - 1))
    return make_spec(name, seed=seed, **params)


@given(attack_specs())
def test_grammar_roundtrip(spec):
    assert parse_spec(spec.render()) == spec


@pytest.mark.parametrize(
    "text",
    [
        "unknownattack:x=1",
        "gaussian:mean=0",              # missing var
        "gaussian:mean=0,var=1,bogus=2",
        "gamma:gamma=abc",
        "gamma:gamma",
        "gamma:gamma=-1",               # out of domain
        "saltpepper:density=1.5,seed=0",
        "histeq:bins=1",
    ],
)
def test_parse_rejects_bad_specs(text):
    with pytest.raises(ParseError):
        parse_spec(text)


def test_spec_validation_raises_param_error():
    with pytest.raises(ParamError):
        make_spec("gaussian", mean=0.0)  # missing var
    with pytest.raises(ParamError):
        make_spec("blur", sd=-1.0)
    with pytest.raises(ParamError):
        AttackSpec(name="blur", params=(("sd", 1.0),), seed=-4)
    with pytest.raises(ParamError):
        AttackSpec(name="nope")
