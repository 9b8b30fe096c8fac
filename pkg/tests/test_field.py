"""Synthetic field generators, noise, and field file formats."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from morsemap.field import (
    FormatError,
    ParameterError,
    ScalarField2D,
    SynthParams,
    add_uniform_noise,
    blob_geometry,
    blob_values,
    generate_blobs,
    generate_sine,
    import_csv,
    load_field,
    sample_synth_params,
    sine_values,
    store_field,
)

from oracles import blob_field_reference, pl_extrema


# ---------------------------------------------------------------------------
# ScalarField2D basics

def test_field_validation():
    with pytest.raises(ParameterError):
        ScalarField2D(1, 4, np.zeros(4, dtype=np.float32))
    with pytest.raises(ParameterError):
        ScalarField2D(2, 2, np.zeros(3, dtype=np.float32))
    with pytest.raises(ParameterError):
        ScalarField2D(2, 2, np.array([0, 1, 2, np.nan], dtype=np.float32))
    f = ScalarField2D(3, 2, np.arange(6, dtype=np.float32))
    assert f.grid.shape == (2, 3)
    assert f.value_at(2, 1) == 5.0


# ---------------------------------------------------------------------------
# Blobs

def test_single_blob_peak():
    p = SynthParams(family="blobs", blob_count=1, centers=((128.0, 128.0),),
                    sigmas=(10.0,))
    f = generate_blobs(p, 256, 256)
    g = f.grid
    assert g[128, 128] == pytest.approx(1.0)
    peak = g[128, 128]
    mask = np.ones_like(g, dtype=bool)
    mask[128, 128] = False
    assert np.all(g[mask] < peak)


def test_blob_closed_form_oracle():
    p = SynthParams(family="blobs", blob_count=2, seed=7)
    centers, sigmas = blob_geometry(p, 48, 40)
    assert all(4.0 <= s <= 32.0 for s in sigmas)
    ref = blob_field_reference(centers, sigmas, 48, 40)
    lib = blob_values(centers, sigmas, 48, 40)
    assert max(abs(a - b) for a, b in zip(ref, lib)) < 1e-12
    f = generate_blobs(p, 48, 40)
    assert np.array_equal(f.values, lib.astype(np.float32))


def test_blob_count_bounds():
    with pytest.raises(ParameterError):
        SynthParams(family="blobs", blob_count=513)
    with pytest.raises(ParameterError):
        SynthParams(family="blobs", blob_count=0)
    SynthParams(family="blobs", blob_count=1)
    SynthParams(family="blobs", blob_count=512)


def test_blob_explicit_geometry_ranges():
    with pytest.raises(ParameterError):
        SynthParams(family="blobs", blob_count=1, sigmas=(3.0,))
    with pytest.raises(ParameterError):
        SynthParams(family="blobs", blob_count=2, sigmas=(5.0,))


def test_generation_is_pure():
    p = SynthParams(family="blobs", blob_count=5, seed=123)
    a = generate_blobs(p, 33, 33)
    b = generate_blobs(p, 33, 33)
    assert np.array_equal(a.values, b.values)
    assert a.meta == b.meta


# ---------------------------------------------------------------------------
# Sine families

def test_sine_origin_is_zero():
    p = SynthParams(family="sine", alpha=10, beta=20)
    f = generate_sine(p, 16, 16)
    assert f.value_at(0, 0) == 0.0


@given(st.integers(5, 20), st.integers(10, 40))
@settings(max_examples=20)
def test_sine_bounded(alpha, beta):
    p = SynthParams(family="sine", alpha=alpha, beta=beta)
    f = generate_sine(p, 40, 30)
    assert np.all(np.abs(f.values) <= 2.0)


@given(st.integers(5, 20), st.integers(10, 40),
       st.sampled_from([10, -10, 45, -45, 80, -80]),
       st.sampled_from([10, -17, 33, 80]))
@settings(max_examples=15)
def test_rotsine_bounded_and_matches_formula(alpha, beta, gamma, delta):
    p = SynthParams(family="rotsine", alpha=alpha, beta=beta, gamma=gamma,
                    delta=delta)
    f = generate_sine(p, 25, 21, rotated=True)
    assert np.all(np.abs(f.values) <= 2.0)
    x, y = 7, 13
    expected = math.sin(x / alpha + y / gamma) + math.sin(y / beta + x / delta)
    assert f.value_at(x, y) == np.float32(expected)


def test_sine_family_flag_mismatch():
    p = SynthParams(family="sine", alpha=10, beta=20)
    with pytest.raises(ParameterError):
        generate_sine(p, 16, 16, rotated=True)


def test_sine_extrema_match_pl_scan():
    # separable field: a PL extremum occurs exactly where both 1D sequences
    # have one, so the 2D link-scan count must equal the product of 1D counts
    p = SynthParams(family="sine", alpha=5, beta=10)
    w = h = 256
    f = generate_sine(p, w, h)
    minima, maxima = pl_extrema(f.values, w, h)

    def count_1d(seq, cmp):
        n = len(seq)
        return sum(
            1 for i in range(n)
            if (i == 0 or cmp(seq[i], seq[i - 1])) and
               (i == n - 1 or cmp(seq[i], seq[i + 1])))

    sx = [math.sin(i / 5) for i in range(w)]
    sy = [math.sin(j / 10) for j in range(h)]
    up = lambda a, b: a > b
    dn = lambda a, b: a < b
    assert len(maxima) == count_1d(sx, up) * count_1d(sy, up)
    assert len(minima) == count_1d(sx, dn) * count_1d(sy, dn)
    assert len(maxima) > 0 and len(minima) > 0


def test_rotsine_range_validation():
    with pytest.raises(ParameterError):
        SynthParams(family="rotsine", alpha=5, beta=10, gamma=5, delta=10)
    with pytest.raises(ParameterError):
        SynthParams(family="rotsine", alpha=5, beta=10, gamma=81, delta=10)
    SynthParams(family="rotsine", alpha=5, beta=10, gamma=-80, delta=10)


# ---------------------------------------------------------------------------
# Noise

def test_noise_zero_is_identity():
    p = SynthParams(family="sine", alpha=7, beta=12)
    f = generate_sine(p, 20, 20)
    g = add_uniform_noise(f, 0.0, seed=5)
    assert np.array_equal(f.values, g.values)


def test_noise_range_and_determinism():
    p = SynthParams(family="blobs", blob_count=3, seed=2)
    f = generate_blobs(p, 30, 30)
    g1 = add_uniform_noise(f, 0.05, seed=9)
    g2 = add_uniform_noise(f, 0.05, seed=9)
    g3 = add_uniform_noise(f, 0.05, seed=10)
    assert np.array_equal(g1.values, g2.values)
    assert not np.array_equal(g1.values, g3.values)
    diff = g1.values.astype(np.float64) - f.values.astype(np.float64)
    assert diff.min() >= 0.0
    assert diff.max() <= 0.05 + 1e-6


def test_noise_negative_magnitude():
    p = SynthParams(family="sine", alpha=7, beta=12)
    f = generate_sine(p, 8, 8)
    with pytest.raises(ParameterError):
        add_uniform_noise(f, -0.1, seed=1)


# ---------------------------------------------------------------------------
# Parameter sampling

def test_sampled_params_respect_ranges_10k():
    for i in range(10_000):
        fam = ("blobs", "sine", "rotsine")[i % 3]
        sample_synth_params(fam, seed=i)  # construction validates ranges


def test_sampling_deterministic():
    a = sample_synth_params("rotsine", seed=77)
    b = sample_synth_params("rotsine", seed=77)
    assert a == b


# ---------------------------------------------------------------------------
# Formats

def test_msf1_round_trip(tmp_path):
    p = SynthParams(family="blobs", blob_count=4, seed=3)
    f = generate_blobs(p, 19, 23)
    path = tmp_path / "f.msf"
    store_field(f, path)
    g = load_field(path)
    assert (g.width, g.height) == (19, 23)
    assert np.array_equal(f.values, g.values)


def test_msf1_bad_magic(tmp_path):
    path = tmp_path / "bad.msf"
    path.write_bytes(b"NOPE" + b"\x00" * 20)
    with pytest.raises(FormatError, match="MSF1"):
        load_field(path)


def test_msf1_truncated(tmp_path):
    p = SynthParams(family="sine", alpha=6, beta=11)
    f = generate_sine(p, 8, 8)
    path = tmp_path / "t.msf"
    store_field(f, path)
    path.write_bytes(path.read_bytes()[:-5])
    with pytest.raises(FormatError, match="expected"):
        load_field(path)


def test_msf1_non_finite(tmp_path):
    import struct
    vals = np.zeros(4, dtype="<f4")
    vals[2] = np.inf
    path = tmp_path / "nf.msf"
    path.write_bytes(b"MSF1" + struct.pack("<II", 2, 2) + vals.tobytes())
    with pytest.raises(FormatError, match=str(12 + 4 * 2)):
        load_field(path)


def test_csv_import(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("0,1\n2,3\n4,5")
    f = import_csv(path)
    assert (f.width, f.height) == (2, 3)
    assert f.values.tolist() == [0.0, 1.0, 2.0, 3.0, 4.0, 5.0]


def test_csv_ragged(tmp_path):
    path = tmp_path / "r.csv"
    path.write_text("0,1\n2\n")
    with pytest.raises(FormatError, match="line 2"):
        import_csv(path)


def test_csv_bad_token(tmp_path):
    path = tmp_path / "b.csv"
    path.write_text("0,x\n")
    with pytest.raises(FormatError, match="line 1"):
        import_csv(path)


@given(st.integers(2, 9), st.integers(2, 9), st.integers(0, 2 ** 32))
@settings(max_examples=25)
def test_msf1_round_trip_random(tmp_path_factory, w, h, seed):
    rng = np.random.default_rng(seed)
    vals = rng.normal(size=w * h).astype(np.float32)
    f = ScalarField2D(w, h, vals)
    path = tmp_path_factory.mktemp("msf") / "x.msf"
    store_field(f, path)
    assert np.array_equal(load_field(path).values, vals)
