import numpy as np
import pytest

from abba.baselines import (
    OneDSaxConfig,
    SaxConfig,
    gaussian_breakpoints,
    onedsax_reconstruct,
    onedsax_symbolize,
    region_representatives,
    sax_reconstruct,
    sax_symbolize,
    _ols_line,
)
from conftest import inverse_normal_cdf

# frozen from the high-precision inverse-CDF oracle (quantiles at i/9)
K9_BREAKPOINTS = [
    -1.2206403488,
    -0.7647096738,
    -0.4307272993,
    -0.1397102989,
    0.1397102989,
    0.4307272993,
    0.7647096738,
    1.2206403488,
]


def test_breakpoints_k2_is_median():
    np.testing.assert_allclose(gaussian_breakpoints(2), [0.0], atol=1e-12)


def test_breakpoints_k4():
    np.testing.assert_allclose(
        gaussian_breakpoints(4), [-0.6745, 0.0, 0.6745], atol=1e-4
    )


def test_breakpoints_k9_golden():
    np.testing.assert_allclose(gaussian_breakpoints(9), K9_BREAKPOINTS, atol=1e-9)


def test_breakpoints_match_oracle():
    for k in range(2, 21):
        bps = gaussian_breakpoints(k)
        oracle = [inverse_normal_cdf(i / k) for i in range(1, k)]
        np.testing.assert_allclose(bps, oracle, atol=1e-6)
        assert np.all(np.diff(bps) > 0)


def test_breakpoints_reject_small_k():
    with pytest.raises(ValueError):
        gaussian_breakpoints(1)


def test_sax_constant_zero_series_maps_to_middle_symbol():
    series = np.zeros(30)
    for k in (3, 5, 9):
        symbols = sax_symbolize(series, SaxConfig(segment_len=5, k=k))
        middle = "abcdefghi"[k // 2]
        assert symbols == middle * 6


def test_sax_sign_split():
    symbols = sax_symbolize([-3.0, -3.0, 3.0, 3.0], SaxConfig(segment_len=2, k=2))
    assert symbols == "ab"


def test_sax_monotone_ramp_gives_nondecreasing_symbols():
    ramp = np.linspace(-2.5, 2.5, 40)
    ramp = (ramp - ramp.mean()) / ramp.std()
    symbols = sax_symbolize(ramp, SaxConfig(segment_len=1, k=9))
    codes = [ord(c) for c in symbols]
    assert codes == sorted(codes)


def test_sax_string_length_is_floor():
    rng = np.random.default_rng(51)
    series = rng.normal(size=103)
    symbols = sax_symbolize(series, SaxConfig(segment_len=10, k=9))
    assert len(symbols) == 10


def test_sax_reconstruct_representatives():
    recon = sax_reconstruct("ab", SaxConfig(segment_len=1, k=2), 2)
    np.testing.assert_allclose(recon, [-0.6745, 0.6745], atol=1e-4)
    oracle = [inverse_normal_cdf(0.25), inverse_normal_cdf(0.75)]
    np.testing.assert_allclose(recon, oracle, atol=1e-9)


def test_sax_symbolize_reconstruct_fixed_point():
    rng = np.random.default_rng(52)
    series = rng.normal(size=60)
    config = SaxConfig(segment_len=5, k=7)
    symbols = sax_symbolize(series, config)
    recon = sax_reconstruct(symbols, config, series.size)
    assert sax_symbolize(recon, config) == symbols


def test_sax_constant_reconstruction():
    config = SaxConfig(segment_len=2, k=9)
    recon = sax_reconstruct("eee", config, 6)
    np.testing.assert_allclose(recon, region_representatives(9)[4])
    assert recon.size == 6


def test_sax_rejects_short_series():
    with pytest.raises(ValueError):
        sax_symbolize([1.0, 2.0], SaxConfig(segment_len=5, k=3))


def test_ols_line_exact_fit():
    mean, slope = _ols_line(np.array([0.0, 1.0, 2.0, 3.0]))
    assert mean == pytest.approx(1.5)
    assert slope == pytest.approx(1.0)


def test_ols_line_symmetric_v_has_zero_slope():
    mean, slope = _ols_line(np.array([2.0, 1.0, 0.0, 1.0, 2.0]))
    assert slope == pytest.approx(0.0, abs=1e-12)


def test_ols_matches_closed_form_oracle():
    rng = np.random.default_rng(53)
    for _ in range(50):
        w = int(rng.integers(2, 20))
        seg = rng.normal(size=w)
        mean, slope = _ols_line(seg)
        # closed-form simple regression on the raw index grid
        x = np.arange(w, dtype=float)
        beta = (np.sum(x * seg) - w * x.mean() * seg.mean()) / (
            np.sum(x * x) - w * x.mean() ** 2
        )
        assert slope == pytest.approx(beta, abs=1e-9)
        assert mean == pytest.approx(seg.mean(), abs=1e-9)


def test_onedsax_center_symbol_for_flat_middle_segment():
    # mean and slope both in their middle regions -> center of the 3x3 grid
    series = np.array([0.01, -0.01, 0.0, 0.01, -0.01, 0.0])
    symbols = onedsax_symbolize(series, OneDSaxConfig(segment_len=6))
    assert symbols == "e"  # code 1*3+1 = 4 -> 'e'


def test_onedsax_round_trip_line_segment():
    config = OneDSaxConfig(segment_len=4)
    symbols = onedsax_symbolize(np.array([0.0, 1.0, 2.0, 3.0]), config)
    assert symbols == "i"  # top mean region, top slope region
    recon = onedsax_reconstruct(symbols, config, 4)
    # reconstruction is a line with the representative mean and slope
    slopes = np.diff(recon)
    np.testing.assert_allclose(slopes, slopes[0])
    assert recon.mean() == pytest.approx(region_representatives(3)[2])


def test_onedsax_string_length():
    rng = np.random.default_rng(54)
    series = rng.normal(size=47)
    symbols = onedsax_symbolize(series, OneDSaxConfig(segment_len=5))
    assert len(symbols) == 9


def test_onedsax_alphabet_size_is_product():
    config = OneDSaxConfig(segment_len=3, k_mean=3, k_slope=3)
    assert config.k_total == 9
    rng = np.random.default_rng(55)
    symbols = onedsax_symbolize(rng.normal(size=300), config)
    assert set(symbols) <= set("abcdefghi")
