"""Experiment harnesses: oracle compression and sparse-spectrum sampling.

These compose the library modules into the two reference experiments and
return plain row records that the CLI serializes as CSV.

Compression: a Gaussian joint-entropy oracle (the classic sensor-network
informativeness function, here over a synthetic smooth covariance) is
approximated two ways on the |B| <= m band: direct model-4 coefficient
queries versus WHT least-squares regression on p random samples. Both are
Monte-Carlo scored against the oracle.

Sampling: synthetic sparse bidders share a frequency pool; training spectra
pick the support, the model-4 sampling theorem reconstructs test bidders from
one query per selected frequency, and a degree-2 polynomial fit on the same
queries serves as baseline.  The harness also reports a captured-mass bound:
the triangle-inequality bound sum |h_B| * ||f^B||_2 / ||v||_2 over the true
frequencies missed by the support, an a-priori cap on the truncation error.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import GroundSet, SetFunction, popcount
from .coverage import GaussianModel, gaussian_entropy, gaussian_entropy_many
from .compression import (
    RNG_ALGORITHM,
    SetFunctionOracle,
    compress_band,
    estimate_relative_error,
    wht_regression,
)
from .sampling import (
    SparseSpectrum4,
    SparseSupport,
    oracle_from_sparse_spectrum,
    reconstruct,
    sampling_indices,
    select_support,
)


def random_rbf_covariance(
    n: int, seed: int, length_scale: float = 0.35, nugget: float = 0.05
) -> np.ndarray:
    """Covariance of n sensors at random plane positions with a squared-
    exponential kernel plus a nugget; always positive definite."""
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, 1.0, size=(n, 2))
    d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
    return np.exp(-d2 / (2.0 * length_scale**2)) + nugget * np.eye(n)


def entropy_oracle(model: GaussianModel) -> SetFunctionOracle:
    return SetFunctionOracle(
        model.ground,
        lambda m: gaussian_entropy(model, m),
        batch_fn=lambda ms: gaussian_entropy_many(model, ms),
    )


def modular_setfunction(ground: GroundSet, seed: int) -> SetFunction:
    """Random modular function c + sum of w_i over i in A (1-band-limited)."""
    rng = np.random.default_rng(seed)
    w = rng.standard_normal(ground.n)
    c = float(rng.standard_normal())
    masks = ground.masks()
    values = np.full(ground.size, c)
    for i in range(ground.n):
        values += w[i] * ((masks >> i) & 1)
    return SetFunction.wrap(ground, values)


@dataclass(frozen=True)
class ExperimentRow:
    """One CSV row of an error table."""

    method: str
    n: int
    params: str
    probes: int
    seed: int
    rng: str
    queries_used: int
    relative_error: float
    wall_time: float | None = None

    CSV_HEADER = "method,n,params,probes,seed,rng,queries_used,relative_error,wall_time"

    def csv(self, with_timing: bool = False) -> str:
        timing = "" if (self.wall_time is None or not with_timing) else repr(self.wall_time)
        return (
            f"{self.method},{self.n},{self.params},{self.probes},{self.seed},"
            f"{self.rng},{self.queries_used},{self.relative_error!r},{timing}"
        )


@dataclass(frozen=True)
class CompressionReport:
    rows: tuple[ExperimentRow, ...]
    band_error: float
    wht_error: float


def compression_experiment(
    covariance: np.ndarray,
    *,
    order: int = 2,
    wht_samples: int = 1000,
    probes: int = 100_000,
    seed: int,
) -> CompressionReport:
    """Score model-4 band compression against WHT regression on one entropy
    oracle.  Both methods share the frequency band |B| <= order and are
    probed at the same seeded random subsets."""
    model = GaussianModel(covariance)
    ground = model.ground

    band_oracle = entropy_oracle(model)
    band = compress_band(band_oracle, order)
    band_queries = band_oracle.queries
    band_error = estimate_relative_error(
        entropy_oracle(model), band, probes, seed=seed
    )

    rng = np.random.default_rng(seed)
    sample_masks = rng.choice(ground.size, size=wht_samples, replace=False)
    wht_oracle = entropy_oracle(model)
    sample_values = wht_oracle.query_many(sample_masks)
    wht = wht_regression(
        zip(sample_masks.tolist(), sample_values.tolist()), band.support, ground
    )
    wht_queries = wht_oracle.queries
    wht_error = estimate_relative_error(entropy_oracle(model), wht, probes, seed=seed)

    rows = (
        ExperimentRow(
            method="dsft4-band",
            n=ground.n,
            params=f"order={order}",
            probes=probes,
            seed=seed,
            rng=RNG_ALGORITHM,
            queries_used=band_queries,
            relative_error=band_error,
        ),
        ExperimentRow(
            method="wht-regression",
            n=ground.n,
            params=f"order={order};p={wht_samples}",
            probes=probes,
            seed=seed,
            rng=RNG_ALGORITHM,
            queries_used=wht_queries,
            relative_error=wht_error,
        ),
    )
    return CompressionReport(rows, band_error, wht_error)


@dataclass(frozen=True)
class BidderPool:
    """Shared frequency pool: masks (empty set first) and base magnitudes."""

    ground: GroundSet
    masks: np.ndarray
    base_magnitudes: np.ndarray


def random_bidder_pool(
    ground: GroundSet,
    size: int,
    seed: int,
    *,
    mag_low: float = 1e-3,
    mag_high: float = 1.0,
) -> BidderPool:
    """Pool of `size` frequencies (the empty set plus size-1 random nonempty
    masks) with log-uniform base magnitudes shared by all bidders."""
    rng = np.random.default_rng(seed)
    chosen: set[int] = set()
    while len(chosen) < size - 1:
        draw = rng.integers(1, ground.size, size=size - 1 - len(chosen), dtype=np.uint64)
        chosen.update(int(m) for m in draw)
    masks = np.concatenate(([0], np.array(sorted(chosen), dtype=np.int64)))
    mags = np.exp(rng.uniform(np.log(mag_low), np.log(mag_high), size=size))
    return BidderPool(ground, masks, mags)


def pool_bidder(pool: BidderPool, rng: np.random.Generator, *,
                include_prob: float = 0.5, jitter_sigma: float = 0.25,
                empty_factor: float = 1.5) -> SparseSpectrum4:
    """Draw one bidder: each nonempty pool frequency enters independently,
    with coefficient base_magnitude * lognormal jitter * random sign; the
    empty-set coefficient is empty_factor * sum|coeffs| (dominant)."""
    nonempty = pool.masks[1:]
    base = pool.base_magnitudes[1:]
    include = rng.random(nonempty.size) < include_prob
    freqs = nonempty[include]
    mags = base[include] * np.exp(jitter_sigma * rng.standard_normal(freqs.size))
    signs = rng.choice([-1.0, 1.0], size=freqs.size)
    coeffs = mags * signs
    all_freqs = np.concatenate(([0], freqs))
    all_coeffs = np.concatenate(([empty_factor * np.abs(coeffs).sum()], coeffs))
    support = SparseSupport(pool.ground, all_freqs)
    lookup = {int(f): float(c) for f, c in zip(all_freqs, all_coeffs)}
    aligned = np.array([lookup[int(f)] for f in support.freqs])
    return SparseSpectrum4(support, aligned)


def _poly2_design(masks: np.ndarray, n: int) -> np.ndarray:
    """Degree-2 polynomial features of the indicator vector of each mask:
    constant, singles, and pair products; 1 + n + C(n,2) columns."""
    bits = ((masks[:, None] >> np.arange(n)[None, :]) & 1).astype(np.float64)
    parts = [np.ones(masks.size), bits]
    pairs = [bits[:, i] * bits[:, j] for i, j in itertools.combinations(range(n), 2)]
    if pairs:
        parts.append(np.column_stack(pairs))
    return np.column_stack(parts)


@dataclass(frozen=True)
class SamplingReport:
    rows: tuple[ExperimentRow, ...]
    recon_errors: np.ndarray  # per test bidder
    poly2_errors: np.ndarray
    mass_bounds: np.ndarray  # captured-mass (truncation) bound per bidder
    captured_mass: np.ndarray  # fraction of spectral l2 mass inside the support
    queries_per_bidder: int

    @property
    def mean_recon_error(self) -> float:
        return float(self.recon_errors.mean())

    @property
    def mean_poly2_error(self) -> float:
        return float(self.poly2_errors.mean())

    @property
    def mean_mass_bound(self) -> float:
        return float(self.mass_bounds.mean())


def sampling_experiment(
    *,
    n: int = 20,
    pool_size: int = 600,
    n_train: int = 25,
    n_test: int = 25,
    k_support: int = 500,
    seed: int,
    chunk: int = 32768,
) -> SamplingReport:
    """Train/test sparse-spectrum elicitation on synthetic pooled bidders.

    Training bidders' dense model-4 spectra pick the k most important
    frequencies; each test bidder is reconstructed from the k complement
    queries and compared (exactly, over all 2**n subsets) against the truth
    and against a degree-2 polynomial least-squares fit on the same queries.
    """
    ground = GroundSet(n)
    pool = random_bidder_pool(ground, pool_size, seed)
    rng = np.random.default_rng(seed + 1)
    train = [pool_bidder(pool, rng) for _ in range(n_train)]
    test = [pool_bidder(pool, rng) for _ in range(n_test)]

    support = select_support([b.to_spectrum() for b in train], k_support)
    queries = sampling_indices(support)
    selected = set(int(B) for B in support.freqs)

    recon_errors = np.zeros(n_test)
    mass_bounds = np.zeros(n_test)
    captured = np.zeros(n_test)
    betas = np.zeros((1 + n + n * (n - 1) // 2, n_test))
    trues: list[np.ndarray] = []

    fit_design = _poly2_design(queries, n)
    for t, bidder in enumerate(test):
        truth = bidder.to_setfunction().values
        trues.append(truth)
        norm_truth = float(np.linalg.norm(truth))

        recon = reconstruct(oracle_from_sparse_spectrum(bidder), support)
        approx = recon.to_setfunction().values
        recon_errors[t] = float(np.linalg.norm(truth - approx)) / norm_truth

        inside = np.array([int(B) in selected for B in bidder.support.freqs])
        missed_coeffs = bidder.coeffs[~inside]
        missed_cards = popcount(bidder.support.freqs[~inside])
        # ||f^B||_2 = 2**((n-|B|)/2) for the model-4 basis
        mass_bounds[t] = float(
            (np.abs(missed_coeffs) * 2.0 ** (0.5 * (n - missed_cards))).sum()
        ) / norm_truth
        total_mass = float((bidder.coeffs**2).sum())
        captured[t] = float((bidder.coeffs[inside] ** 2).sum()) / total_mass

        betas[:, t] = np.linalg.lstsq(fit_design, truth[queries], rcond=None)[0]

    # exact poly2 error over all 2**n subsets, chunked
    sq_err = np.zeros(n_test)
    for start in range(0, ground.size, chunk):
        masks = np.arange(start, min(start + chunk, ground.size), dtype=np.int64)
        pred = _poly2_design(masks, n) @ betas
        block = np.column_stack([v[start : start + chunk] for v in trues])
        sq_err += ((block - pred) ** 2).sum(axis=0)
    norms = np.array([float(np.linalg.norm(v)) for v in trues])
    poly2_errors = np.sqrt(sq_err) / norms

    rows = (
        ExperimentRow(
            method="dsft4-sampling",
            n=n,
            params=f"pool={pool_size};k={k_support};train={n_train};test={n_test}",
            probes=ground.size,
            seed=seed,
            rng=RNG_ALGORITHM,
            queries_used=len(support),
            relative_error=float(recon_errors.mean()),
        ),
        ExperimentRow(
            method="poly2-baseline",
            n=n,
            params=f"pool={pool_size};k={k_support};train={n_train};test={n_test}",
            probes=ground.size,
            seed=seed,
            rng=RNG_ALGORITHM,
            queries_used=len(support),
            relative_error=float(poly2_errors.mean()),
        ),
    )
    return SamplingReport(
        rows=rows,
        recon_errors=recon_errors,
        poly2_errors=poly2_errors,
        mass_bounds=mass_bounds,
        captured_mass=captured,
        queries_per_bidder=len(support),
    )
