"""Sparse-spectrum sampling and reconstruction for model 4.

If a set function is model-4 Fourier sparse with known support {B_1..B_k}
(sorted by cardinality then mask), querying it at A_i = N \\ B_i yields a
unit-lower-triangular linear system

    s_{A_i} = sum_j [B_j subseteq B_i] * coeff_j

solved by forward substitution: k queries, O(k^2) arithmetic, no divisions.
Exactly-sparse oracles reconstruct perfectly; approximately sparse ones get
the unique spectrum agreeing with the oracle on the queried subsets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GroundSet, SetFunction, Spectrum, popcount
from .compression import SetFunctionOracle
from . import io as setfn_io
from .transforms import INVERSE, dsft_inplace


@dataclass(frozen=True)
class SparseSupport:
    """Distinct frequency masks sorted by (cardinality, mask) ascending.

    The sort order makes T_ij = [B_j subseteq B_i] lower triangular with a
    unit diagonal, which is what `reconstruct` relies on.
    """

    ground: GroundSet
    freqs: np.ndarray

    def __post_init__(self):
        freqs = np.asarray(self.freqs, dtype=np.int64)
        if freqs.ndim != 1:
            raise ValueError("support must be a 1-d mask array")
        if freqs.size and (freqs.min() < 0 or freqs.max() >= self.ground.size):
            raise ValueError(f"support masks out of range for n={self.ground.n}")
        if np.unique(freqs).size != freqs.size:
            raise ValueError("duplicate support entries")
        order = np.lexsort((freqs, popcount(freqs)))
        freqs = freqs[order]
        freqs.setflags(write=False)
        object.__setattr__(self, "freqs", freqs)

    def __len__(self) -> int:
        return int(self.freqs.size)


@dataclass(frozen=True)
class SparseSpectrum4:
    """Model-4 coefficients aligned with a sparse support."""

    support: SparseSupport
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=np.float64)
        if coeffs.shape != self.support.freqs.shape:
            raise ValueError("coeffs must align with the support")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def ground(self) -> GroundSet:
        return self.support.ground

    def to_spectrum(self) -> Spectrum:
        """Densify (n <= 30)."""
        dense = np.zeros(self.ground.size)
        dense[self.support.freqs] = self.coeffs
        return Spectrum.wrap(self.ground, 4, dense)

    def to_setfunction(self) -> SetFunction:
        """Densify and invert."""
        dense = np.zeros(self.ground.size)
        dense[self.support.freqs] = self.coeffs
        dsft_inplace(dense, 4, INVERSE)
        return SetFunction.wrap(self.ground, dense)


def sampling_indices(support: SparseSupport) -> np.ndarray:
    """The query sets A_i = N \\ B_i, in support order."""
    return support.ground.full_mask ^ support.freqs


def eval_sparse(spectrum: SparseSpectrum4, A: int) -> float:
    """sum of coefficients at frequencies disjoint from A; O(k)."""
    A = spectrum.ground.check_mask(A)
    disjoint = (spectrum.support.freqs & A) == 0
    return float(spectrum.coeffs[disjoint].sum())


def eval_sparse_many(spectrum: SparseSpectrum4, masks) -> np.ndarray:
    """Vectorized `eval_sparse` over an array of subset masks."""
    masks = np.asarray(masks, dtype=np.int64)
    flat = masks.ravel()
    out = np.zeros(flat.shape[0])
    for B, c in zip(spectrum.support.freqs, spectrum.coeffs):
        out += np.where((flat & int(B)) == 0, c, 0.0)
    return out.reshape(masks.shape)


def oracle_from_sparse_spectrum(spectrum: SparseSpectrum4) -> SetFunctionOracle:
    return SetFunctionOracle(
        spectrum.ground,
        lambda m: eval_sparse(spectrum, m),
        batch_fn=lambda ms: eval_sparse_many(spectrum, ms),
    )


def reconstruct(oracle: SetFunctionOracle, support: SparseSupport) -> SparseSpectrum4:
    """Recover the coefficients on `support` from exactly k oracle queries.

    Queries the oracle at N \\ B_i and solves the unit-lower-triangular system
    by forward substitution in support order.
    """
    freqs = support.freqs
    queries = sampling_indices(support)
    values = oracle.query_many(queries)
    coeffs = np.zeros(freqs.size)
    for i in range(freqs.size):
        Bi = int(freqs[i])
        if i:
            prior = freqs[:i]
            inside = (prior & ~Bi) == 0  # B_j subseteq B_i
            coeffs[i] = values[i] - coeffs[:i][inside].sum()
        else:
            coeffs[i] = values[i]
    return SparseSpectrum4(support, coeffs)


def select_support(training_spectra, k: int) -> SparseSupport:
    """Rank frequencies by mean absolute coefficient over training spectra.

    Ties break by ascending (cardinality, mask), so selection is
    deterministic.  Returns the top k frequencies as a SparseSupport.
    """
    spectra = list(training_spectra)
    if not spectra:
        raise ValueError("select_support requires at least one training spectrum")
    ground = spectra[0].ground
    for sp in spectra:
        if sp.ground != ground:
            raise ValueError("training spectra must share a ground set")
        if sp.model != 4:
            raise ValueError(f"training spectra must be model 4, got model {sp.model}")
    if not 0 <= k <= ground.size:
        raise ValueError(f"cannot select {k} of {ground.size} frequencies")
    score = np.zeros(ground.size)
    for sp in spectra:
        score += np.abs(sp.coeffs)
    score /= len(spectra)
    masks = ground.masks()
    order = np.lexsort((masks, popcount(masks), -score))
    return SparseSupport(ground, masks[order[:k]])


def synthetic_sparse_spectrum(
    ground: GroundSet,
    k: int,
    *,
    seed=None,
    rng: np.random.Generator | None = None,
    freq_pool: np.ndarray | None = None,
    mag_low: float = 1e-3,
    mag_high: float = 1.0,
    empty_factor: float = 2.0,
) -> SparseSpectrum4:
    """Random k-sparse model-4 spectrum standing in for an auction bidder.

    Picks k distinct nonempty frequencies (uniform over the powerset, or
    uniform from `freq_pool` when given), gives them log-uniform magnitudes
    with random signs, and adds a dominant empty-set coefficient
    empty_factor * sum|coeffs| so the signal stays positive.
    """
    if rng is None:
        rng = np.random.default_rng(seed)
    if freq_pool is not None:
        pool = np.asarray(freq_pool, dtype=np.int64)
        pool = pool[pool != 0]
        if k > pool.size:
            raise ValueError(f"pool holds {pool.size} frequencies, cannot pick {k}")
        freqs = rng.choice(pool, size=k, replace=False)
    else:
        if k >= ground.size:
            raise ValueError(f"cannot pick {k} distinct nonempty frequencies for n={ground.n}")
        chosen: set[int] = set()
        while len(chosen) < k:
            draw = rng.integers(1, ground.size, size=k - len(chosen), dtype=np.uint64)
            chosen.update(int(m) for m in draw)
        freqs = np.array(sorted(chosen), dtype=np.int64)
    mags = np.exp(rng.uniform(np.log(mag_low), np.log(mag_high), size=k))
    signs = rng.choice([-1.0, 1.0], size=k)
    coeffs = mags * signs
    all_freqs = np.concatenate(([0], freqs))
    all_coeffs = np.concatenate(([empty_factor * np.abs(coeffs).sum()], coeffs))
    support = SparseSupport(ground, all_freqs)
    # align the coefficients with the support's (cardinality, mask) order
    lookup = {int(f): float(c) for f, c in zip(all_freqs, all_coeffs)}
    aligned = np.array([lookup[int(f)] for f in support.freqs])
    return SparseSpectrum4(support, aligned)


def save_sparse_spectrum(path, spectrum: SparseSpectrum4) -> None:
    pairs = [(int(B), float(c)) for B, c in zip(spectrum.support.freqs, spectrum.coeffs)]
    setfn_io.write_entries(path, spectrum.ground.n, "sparse", 4, pairs)


def load_sparse_spectrum(path) -> SparseSpectrum4:
    rec = setfn_io.parse_setfn(path)
    if rec.model != 4 or rec.kind != "sparse":
        raise setfn_io.SetFnFormatError(path, 4, "expected a sparse model-4 spectrum")
    entries = rec.entries()
    support = SparseSupport(rec.ground, np.array(sorted(entries), dtype=np.int64))
    coeffs = np.array([entries[int(B)] for B in support.freqs])
    return SparseSpectrum4(support, coeffs)


def save_support(path, support: SparseSupport) -> None:
    """Supports serialize as sparse model-4 files with unit coefficients."""
    pairs = [(int(B), 1.0) for B in support.freqs]
    setfn_io.write_entries(path, support.ground.n, "sparse", 4, pairs)


def load_support(path) -> SparseSupport:
    rec = setfn_io.parse_setfn(path)
    if rec.model != 4 or rec.kind != "sparse":
        raise setfn_io.SetFnFormatError(path, 4, "expected a sparse model-4 support file")
    return SparseSupport(rec.ground, np.array([m for m, _ in rec.pairs], dtype=np.int64))
