import inspect
import math

import numpy as np
import pytest

from setsp.core import GroundSet, SetFunction, subsets_of_cardinality_at_most
from setsp.compression import (
    BandlimitedApprox,
    SetFunctionOracle,
    compress_band,
    dsft4_coefficient_by_queries,
    estimate_relative_error,
    eval_bandlimited,
    eval_bandlimited_many,
    wht_regression,
)
from setsp.transforms import INVERSE, dsft, dsft_inplace


def _dense_oracle(values, n):
    return SetFunctionOracle.from_setfunction(SetFunction(GroundSet(n), values))


def test_coefficient_empty_set_is_one_query():
    oracle = _dense_oracle([1.0, 2.0, 3.0, 4.0], 2)
    assert dsft4_coefficient_by_queries(oracle, 0) == 4.0
    assert oracle.queries == 1


def test_coefficient_singleton_example():
    oracle = _dense_oracle([1.0, 2.0, 3.0, 4.0], 2)
    assert dsft4_coefficient_by_queries(oracle, 0b01) == -1.0
    assert oracle.queries == 2


def test_coefficient_pair_vanishes_on_modular():
    n = 5
    g = GroundSet(n)
    w = np.arange(1.0, n + 1)
    masks = g.masks()
    values = np.zeros(g.size)
    for i in range(n):
        values += w[i] * ((masks >> i) & 1)
    oracle = _dense_oracle(values, n)
    assert abs(dsft4_coefficient_by_queries(oracle, 0b00011)) < 1e-12
    assert oracle.queries == 4  # 2**|B| without a memo


@pytest.mark.parametrize("n", (1, 4, 8))
def test_coefficients_match_dense_transform(n):
    rng = np.random.default_rng(n)
    values = rng.standard_normal(1 << n)
    spec = dsft(4, SetFunction(GroundSet(n), values))
    oracle = _dense_oracle(values, n)
    memo = {}
    for B in range(1 << n):
        got = dsft4_coefficient_by_queries(oracle, B, memo)
        assert abs(got - spec.coeffs[B]) < 1e-10


def test_compress_band_full_order_reproduces():
    rng = np.random.default_rng(7)
    n = 5
    values = rng.standard_normal(1 << n)
    approx = compress_band(_dense_oracle(values, n), n)
    for A in (0, 3, 17, 31):
        assert abs(eval_bandlimited(approx, A) - values[A]) < 1e-10


def test_compress_band_query_accounting():
    rng = np.random.default_rng(8)
    n = 8
    values = rng.standard_normal(1 << n)
    oracle = _dense_oracle(values, n)
    approx = compress_band(oracle, 2)
    expected_distinct = 1 + n + n * (n - 1) // 2
    assert oracle.queries == expected_distinct
    assert len(approx) == expected_distinct
    assert approx.model == 4


def test_compress_band_wide_ground_set():
    # the support alone: 1 + 46 + C(46,2) low-order frequencies
    n = 46
    g = GroundSet(n)
    w = np.linspace(0.5, 2.0, n)

    def modular(mask: int) -> float:
        return sum(w[i] for i in range(n) if mask >> i & 1)

    oracle = SetFunctionOracle(g, modular)
    approx = compress_band(oracle, 2)
    assert len(approx) == 1082
    assert oracle.queries == 1082
    pair_coeffs = approx.coeffs[np.bitwise_count(approx.support) == 2]
    assert np.abs(pair_coeffs).max() < 1e-9


def test_eval_bandlimited_examples():
    g = GroundSet(2)
    approx = BandlimitedApprox(g, 4, np.array([0, 1]), np.array([2.0, 3.0]))
    assert eval_bandlimited(approx, 0b10) == 5.0
    assert eval_bandlimited(approx, 0b11) == 2.0
    assert eval_bandlimited_many(approx, np.array([2, 3])).tolist() == [5.0, 2.0]


def test_bandlimited_support_must_be_distinct():
    g = GroundSet(2)
    with pytest.raises(ValueError, match="distinct"):
        BandlimitedApprox(g, 4, np.array([1, 1]), np.array([1.0, 2.0]))


def test_wht_regression_square_system_is_exact():
    rng = np.random.default_rng(12)
    n = 4
    g = GroundSet(n)
    values = rng.standard_normal(16)
    spec = dsft(5, SetFunction(g, values))
    approx = wht_regression(
        [(A, float(values[A])) for A in range(16)], np.arange(16), g
    )
    assert np.abs(approx.coeffs - spec.coeffs).max() < 1e-9


def test_wht_regression_recovers_bandlimited():
    rng = np.random.default_rng(13)
    n = 6
    g = GroundSet(n)
    support = subsets_of_cardinality_at_most(g, 2)
    coeffs = np.zeros(g.size)
    coeffs[support] = rng.standard_normal(support.size)
    signal = np.array(coeffs)
    dsft_inplace(signal, 5, INVERSE)
    approx = wht_regression(
        [(A, float(signal[A])) for A in range(g.size)], support, g
    )
    assert np.abs(approx.coeffs - coeffs[support]).max() < 1e-9
    residual = [abs(eval_bandlimited(approx, A) - signal[A]) for A in range(g.size)]
    assert max(residual) < 1e-9


def test_wht_regression_validation():
    g = GroundSet(2)
    with pytest.raises(ValueError, match="at least one"):
        wht_regression([], np.array([0]), g)
    with pytest.raises(ValueError, match="distinct"):
        wht_regression([(1, 0.5), (1, 0.5)], np.array([0]), g)


def test_estimate_error_exact_approx_is_zero():
    rng = np.random.default_rng(14)
    n = 6
    values = rng.standard_normal(1 << n)
    approx = compress_band(_dense_oracle(values, n), n)
    err = estimate_relative_error(_dense_oracle(values, n), approx, 2000, seed=5)
    assert err < 1e-12


def test_estimate_error_deterministic_and_positive():
    rng = np.random.default_rng(15)
    n = 7
    values = rng.standard_normal(1 << n)
    approx = compress_band(_dense_oracle(values, n), 1)
    a = estimate_relative_error(_dense_oracle(values, n), approx, 5000, seed=7)
    b = estimate_relative_error(_dense_oracle(values, n), approx, 5000, seed=7)
    c = estimate_relative_error(_dense_oracle(values, n), approx, 5000, seed=8)
    assert a == b
    assert a > 0.0
    assert a != c


def test_estimate_error_default_probe_count():
    params = inspect.signature(estimate_relative_error).parameters
    assert params["m_samples"].default == 10**6


def test_estimate_error_rejects_zero_signal():
    oracle = _dense_oracle(np.zeros(8), 3)
    approx = BandlimitedApprox(GroundSet(3), 4, np.array([0]), np.array([0.0]))
    with pytest.raises(ValueError, match="zero"):
        estimate_relative_error(oracle, approx, 10, seed=1)


def test_monte_carlo_close_to_exhaustive():
    rng = np.random.default_rng(16)
    n = 10
    values = rng.standard_normal(1 << n) + 3.0
    approx = compress_band(_dense_oracle(values, n), 2)
    approx_values = eval_bandlimited_many(approx, np.arange(1 << n))
    exact = float(
        np.linalg.norm(values - approx_values) / np.linalg.norm(values)
    )
    mc = estimate_relative_error(_dense_oracle(values, n), approx, 10**6, seed=21)
    assert math.isclose(mc, exact, rel_tol=0.02)


def test_oracle_counter_and_determinism():
    calls = []

    def fn(mask):
        calls.append(mask)
        return float(mask)

    oracle = SetFunctionOracle(GroundSet(3), fn)
    assert oracle.query(5) == 5.0
    assert oracle.query(5) == 5.0
    assert oracle.queries == 2
    assert oracle.query_many(np.array([1, 2])).tolist() == [1.0, 2.0]
    assert oracle.queries == 4
    with pytest.raises(ValueError):
        oracle.query(8)
