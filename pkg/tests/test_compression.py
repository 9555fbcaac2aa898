import math

import numpy as np
import pytest

from abba.compression import (
    CompressionConfig,
    PieceSequence,
    chain_points,
    compress,
    compression_error_bound,
    evaluate_chain,
)
from conftest import chord_error


def random_series(rng, n):
    kind = rng.integers(3)
    if kind == 0:
        return np.cumsum(rng.normal(0, 1, n))
    if kind == 1:
        return np.sin(2 * np.pi * np.arange(n) / rng.uniform(15, 80)) + rng.normal(0, 0.05, n)
    return np.cumsum(rng.normal(0, 0.3, n)) + np.linspace(0, rng.uniform(-3, 3), n)


def test_exact_line_is_one_piece():
    pieces = compress(np.arange(11.0), CompressionConfig(tol=0.1))
    assert pieces.pieces() == [(10, 10.0)]


def test_constant_series_is_one_flat_piece():
    pieces = compress([5.0, 5.0, 5.0, 5.0], CompressionConfig(tol=0.1))
    assert pieces.pieces() == [(3, 0.0)]


def test_zigzag_splits_to_unit_pieces():
    pieces = compress([0.0, 1.0, 0.0, 1.0, 0.0], CompressionConfig(tol=0.1))
    assert pieces.pieces() == [(1, 1.0), (1, -1.0), (1, 1.0), (1, -1.0)]


def test_chain_interpolates_breakpoints_exactly():
    rng = np.random.default_rng(11)
    values = random_series(rng, 300)
    pieces = compress(values, CompressionConfig(tol=0.3))
    for idx, val in chain_points(pieces):
        assert val == pytest.approx(values[idx], abs=1e-9)


def test_pointwise_bound_holds_on_every_piece():
    rng = np.random.default_rng(12)
    for _ in range(25):
        values = random_series(rng, int(rng.integers(50, 400)))
        tol = float(rng.choice([0.05, 0.1, 0.2, 0.4]))
        pieces = compress(values, CompressionConfig(tol=tol))
        start = 0
        for length in pieces.lengths:
            err = chord_error(values, start, start + length)
            assert err <= (length - 1) * tol * tol + 1e-9
            start += int(length)
        assert start == pieces.original_length


def test_greedy_maximality():
    rng = np.random.default_rng(13)
    for _ in range(25):
        values = random_series(rng, int(rng.integers(50, 300)))
        tol = float(rng.choice([0.05, 0.1, 0.3]))
        pieces = compress(values, CompressionConfig(tol=tol))
        start = 0
        for j, length in enumerate(pieces.lengths):
            end = start + int(length)
            if end < pieces.original_length:  # extending the last piece is impossible
                err = chord_error(values, start, end + 1)
                assert err > length * tol * tol - 1e-9
            start = end


def test_max_len_binds():
    pieces = compress(np.arange(21.0), CompressionConfig(tol=0.1, max_len=5))
    assert list(pieces.lengths) == [5, 5, 5, 5]
    np.testing.assert_allclose(pieces.increments, [5.0, 5.0, 5.0, 5.0])


def test_euclidean_bound_on_stitched_chain():
    rng = np.random.default_rng(14)
    for _ in range(20):
        values = random_series(rng, int(rng.integers(100, 500)))
        tol = float(rng.choice([0.1, 0.2, 0.5]))
        pieces = compress(values, CompressionConfig(tol=tol))
        chain = evaluate_chain(pieces)
        sq_err = float(np.sum((values - chain) ** 2))
        N, n = pieces.original_length, len(pieces)
        assert sq_err <= (N - n) * tol * tol + 1e-9


def test_determinism():
    rng = np.random.default_rng(15)
    values = random_series(rng, 250)
    a = compress(values, CompressionConfig(tol=0.2))
    b = compress(values, CompressionConfig(tol=0.2))
    assert np.array_equal(a.lengths, b.lengths)
    assert np.array_equal(a.increments, b.increments)


def test_error_bound_values():
    # 231-sample series compressed to 7 pieces at tol 0.4
    assert compression_error_bound(230, 7, 0.4) == pytest.approx(math.sqrt(223) * 0.4)
    assert compression_error_bound(230, 7, 0.4) == pytest.approx(5.973, abs=1e-3)
    assert compression_error_bound(100, 100, 0.3) == 0.0
    assert compression_error_bound(7127, 123, 0.1) == pytest.approx(8.369, abs=5e-4)


def test_error_bound_rejects_bad_counts():
    with pytest.raises(ValueError):
        compression_error_bound(10, 11, 0.1)
    with pytest.raises(ValueError):
        compression_error_bound(10, 0, 0.1)


def test_chain_points_examples():
    seq = PieceSequence(0.0, np.array([2]), np.array([2.0]), 2)
    assert chain_points(seq) == [(0, 0.0), (2, 2.0)]
    seq = PieceSequence(1.0, np.array([3, 2]), np.array([3.0, -1.0]), 5)
    assert chain_points(seq) == [(0, 1.0), (3, 4.0), (5, 3.0)]
    seq = PieceSequence(2.5, np.array([], dtype=int), np.array([]), 0)
    assert chain_points(seq) == [(0, 2.5)]


def test_non_finite_input_rejected():
    with pytest.raises(ValueError):
        compress([0.0, np.nan, 1.0], CompressionConfig(tol=0.1))


def test_piece_sequence_validates_totals():
    with pytest.raises(ValueError):
        PieceSequence(0.0, np.array([2, 2]), np.array([1.0, 1.0]), 5)
    with pytest.raises(ValueError):
        PieceSequence(0.0, np.array([0]), np.array([1.0]), 0)


def test_config_validation():
    with pytest.raises(ValueError):
        CompressionConfig(tol=0.0)
    with pytest.raises(ValueError):
        CompressionConfig(tol=0.1, max_len=0)
