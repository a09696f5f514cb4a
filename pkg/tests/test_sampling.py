import numpy as np
import pytest

from setsp.core import GroundSet, SetFunction, Spectrum
from setsp.compression import SetFunctionOracle
from setsp.sampling import (
    SparseSpectrum4,
    SparseSupport,
    eval_sparse,
    eval_sparse_many,
    load_sparse_spectrum,
    load_support,
    oracle_from_sparse_spectrum,
    reconstruct,
    sampling_indices,
    save_sparse_spectrum,
    save_support,
    select_support,
    synthetic_sparse_spectrum,
)
from setsp.transforms import INVERSE, dsft, dsft_matrix


def test_sampling_indices_examples():
    g = GroundSet(2)
    assert sampling_indices(SparseSupport(g, np.array([0]))).tolist() == [3]
    assert sampling_indices(SparseSupport(g, np.array([0, 1]))).tolist() == [3, 2]
    full = SparseSupport(g, np.arange(4))
    assert sorted(sampling_indices(full).tolist()) == [0, 1, 2, 3]


def test_support_sorting_and_validation():
    g = GroundSet(3)
    support = SparseSupport(g, np.array([6, 1, 0, 7]))
    assert support.freqs.tolist() == [0, 1, 6, 7]  # (cardinality, mask) order
    with pytest.raises(ValueError, match="duplicate"):
        SparseSupport(g, np.array([1, 1]))
    with pytest.raises(ValueError, match="out of range"):
        SparseSupport(g, np.array([8]))


@pytest.mark.parametrize("n", (2, 4, 8))
def test_triangularity_of_sampling_matrix(n):
    rng = np.random.default_rng(n)
    g = GroundSet(n)
    k = min(12, g.size)
    support = SparseSupport(g, rng.choice(g.size, size=k, replace=False))
    queries = sampling_indices(support)
    Minv = dsft_matrix(4, INVERSE, n)
    T = Minv[np.ix_(queries, support.freqs)]
    assert np.array_equal(np.diag(T), np.ones(k))
    assert np.abs(np.triu(T, 1)).max() == 0.0
    # and T really is the subset-indicator matrix
    expected = (support.freqs[None, :] & ~support.freqs[:, None]) == 0
    assert np.array_equal(T, expected.astype(float))


def test_reconstruct_two_frequency_example():
    g = GroundSet(2)
    oracle = SetFunctionOracle.from_setfunction(SetFunction(g, [0.0, 0.0, 5.0, 2.0]))
    spec = reconstruct(oracle, SparseSupport(g, np.array([0, 1])))
    assert spec.coeffs.tolist() == [2.0, 3.0]
    assert oracle.queries == 2


def test_reconstruct_constant_function():
    g = GroundSet(3)
    oracle = SetFunctionOracle(g, lambda m: 4.25)
    spec = reconstruct(oracle, SparseSupport(g, np.array([0])))
    assert spec.coeffs.tolist() == [4.25]


@pytest.mark.parametrize("trial", range(3))
def test_reconstruct_exact_recovery(trial):
    g = GroundSet(20)
    truth = synthetic_sparse_spectrum(g, 199, seed=300 + trial)
    oracle = oracle_from_sparse_spectrum(truth)
    got = reconstruct(oracle, truth.support)
    assert oracle.queries == len(truth.support) == 200
    scale = np.abs(truth.coeffs).max()
    assert np.abs(got.coeffs - truth.coeffs).max() <= 1e-8 * scale


def test_eval_sparse_examples():
    g = GroundSet(2)
    spec = SparseSpectrum4(SparseSupport(g, np.array([0, 1])), np.array([2.0, 3.0]))
    assert eval_sparse(spec, 0) == 5.0
    assert eval_sparse(spec, 1) == 2.0
    empty = SparseSpectrum4(SparseSupport(g, np.array([], dtype=np.int64)), np.array([]))
    assert eval_sparse(empty, 3) == 0.0
    assert eval_sparse_many(spec, np.array([0, 1, 2])).tolist() == [5.0, 2.0, 5.0]


def test_sparse_to_dense_consistency():
    g = GroundSet(6)
    spec = synthetic_sparse_spectrum(g, 10, seed=4)
    dense_fn = spec.to_setfunction()
    probe = np.arange(g.size)
    assert np.abs(eval_sparse_many(spec, probe) - dense_fn.values).max() < 1e-10
    # densified spectrum inverts to the same signal
    from setsp.transforms import idsft

    assert np.abs(idsft(4, spec.to_spectrum()).values - dense_fn.values).max() < 1e-12


def test_select_support_exact_sparse_training():
    g = GroundSet(4)
    coeffs = np.zeros(16)
    coeffs[[0, 3, 9]] = (5.0, -2.0, 1.0)
    spec = Spectrum(g, 4, coeffs)
    support = select_support([spec], 3)
    assert set(support.freqs.tolist()) == {0, 3, 9}


def test_select_support_tie_break():
    g = GroundSet(3)
    a = np.zeros(8)
    a[2] = 1.0
    b = np.zeros(8)
    b[4] = 1.0
    support = select_support([Spectrum(g, 4, a), Spectrum(g, 4, b)], 1)
    assert support.freqs.tolist() == [2]  # equal scores: lower mask wins


def test_select_support_validation():
    with pytest.raises(ValueError, match="at least one"):
        select_support([], 1)
    g = GroundSet(2)
    with pytest.raises(ValueError, match="model 4"):
        select_support([Spectrum(g, 5, np.zeros(4))], 1)
    with pytest.raises(ValueError, match="ground"):
        select_support([Spectrum(g, 4, np.zeros(4)), Spectrum(GroundSet(3), 4, np.zeros(8))], 1)


def test_synthetic_spectrum_properties():
    g = GroundSet(12)
    spec = synthetic_sparse_spectrum(g, 30, seed=9)
    again = synthetic_sparse_spectrum(g, 30, seed=9)
    assert np.array_equal(spec.coeffs, again.coeffs)
    assert np.array_equal(spec.support.freqs, again.support.freqs)
    assert len(spec.support) == 31  # 30 frequencies plus the empty set
    assert spec.support.freqs[0] == 0
    nonzero = spec.coeffs[1:]
    assert spec.coeffs[0] >= np.abs(nonzero).sum()  # dominant offset
    zero = synthetic_sparse_spectrum(g, 0, seed=9)
    assert eval_sparse(zero, 7) == 0.0


def test_synthetic_spectrum_pool():
    g = GroundSet(10)
    pool = np.array([3, 17, 40, 100, 512])
    spec = synthetic_sparse_spectrum(g, 4, seed=2, freq_pool=pool)
    assert set(spec.support.freqs.tolist()) - {0} <= set(pool.tolist())


def test_serialization_roundtrip(tmp_path):
    g = GroundSet(8)
    spec = synthetic_sparse_spectrum(g, 12, seed=3)
    spec_path = tmp_path / "spec.setfn"
    save_sparse_spectrum(spec_path, spec)
    back = load_sparse_spectrum(spec_path)
    assert np.array_equal(back.support.freqs, spec.support.freqs)
    assert np.array_equal(back.coeffs, spec.coeffs)

    support_path = tmp_path / "support.setfn"
    save_support(support_path, spec.support)
    support = load_support(support_path)
    assert np.array_equal(support.freqs, spec.support.freqs)


def test_reconstruct_matches_partial_spectrum():
    # an oracle that is NOT sparse: reconstruction must still match it on the
    # queried subsets
    rng = np.random.default_rng(31)
    n = 6
    g = GroundSet(n)
    values = rng.standard_normal(g.size)
    oracle = SetFunctionOracle.from_setfunction(SetFunction(g, values))
    support = SparseSupport(g, rng.choice(g.size, size=10, replace=False))
    spec = reconstruct(oracle, support)
    for A in sampling_indices(support):
        assert abs(eval_sparse(spec, int(A)) - values[A]) < 1e-9
