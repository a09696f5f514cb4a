"""The five powerset Fourier transforms.

Each transform is the n-fold Kronecker power of a 2x2 kernel, so it factors
into n stages of 2**(n-1) independent 2x2 butterflies; stage i pairs indices
that differ in bit i-1.  All kernels contain only 0 and +-1, hence forward
transforms of integer signals are exact.  Model 5 is the Walsh-Hadamard
transform; its inverse carries an extra (1/2)**n scale, applied once at the
end.

The same Kronecker structure gives a closed form for every matrix entry:

    entry(row, col) = scale * (-1)**|row & col| * [condition(row, col)]

with the condition depending on (model, direction): rows and columns disjoint,
rows and columns covering N, row a subset of column, column a subset of row,
or no condition at all.  `dsft_matrix` materializes these entries and
`fourier_basis_entry` evaluates single entries lazily in O(1) popcount work.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    GroundSet,
    SetFunction,
    Spectrum,
    check_model,
    popcount,
)

FORWARD = "forward"
INVERSE = "inverse"

FORWARD_KERNELS = {
    1: np.array([[1.0, 1.0], [1.0, 0.0]]),
    2: np.array([[1.0, 1.0], [0.0, -1.0]]),
    3: np.array([[1.0, 0.0], [1.0, -1.0]]),
    4: np.array([[0.0, 1.0], [1.0, -1.0]]),
    5: np.array([[1.0, 1.0], [1.0, -1.0]]),
}

INVERSE_KERNELS = {
    1: np.array([[0.0, 1.0], [1.0, -1.0]]),
    2: np.array([[1.0, 1.0], [0.0, -1.0]]),
    3: np.array([[1.0, 0.0], [1.0, -1.0]]),
    4: np.array([[1.0, 1.0], [1.0, 0.0]]),
    5: np.array([[0.5, 0.5], [0.5, -0.5]]),
}

# Matrix-entry closed forms, keyed by (model, direction).  "disjoint" means
# row & col == 0, "cover" means row | col == full mask, "row_in_col" /
# "col_in_row" are subset conditions, "all" is unconditional.
_CONDITIONS = {
    (1, FORWARD): "disjoint",
    (1, INVERSE): "cover",
    (2, FORWARD): "row_in_col",
    (2, INVERSE): "row_in_col",
    (3, FORWARD): "col_in_row",
    (3, INVERSE): "col_in_row",
    (4, FORWARD): "cover",
    (4, INVERSE): "disjoint",
    (5, FORWARD): "all",
    (5, INVERSE): "all",
}

MATRIX_MAX_N = 12  # dense 2**n x 2**n oracles only


def check_direction(direction: str) -> str:
    if direction not in (FORWARD, INVERSE):
        raise ValueError(f"direction must be '{FORWARD}' or '{INVERSE}'")
    return direction


@dataclass(frozen=True)
class TransformKernel:
    """2x2 kernel whose n-fold Kronecker power is the transform matrix."""

    model: int
    direction: str
    k2x2: np.ndarray


def kernel(model: int, direction: str = FORWARD) -> TransformKernel:
    check_model(model)
    check_direction(direction)
    table = FORWARD_KERNELS if direction == FORWARD else INVERSE_KERNELS
    return TransformKernel(model, direction, table[model].copy())


def _infer_n(size: int) -> int:
    n = size.bit_length() - 1
    if 1 << n != size:
        raise ValueError(f"signal length {size} is not a power of two")
    return n


def dsft_inplace(values: np.ndarray, model: int, direction: str = FORWARD) -> int:
    """Fast transform of `values` in place; returns the add/sub count.

    `values` is a float64 array of length 2**n indexed by subset mask; a 2-d
    array of shape (2**n, m) transforms m signals at once (columns).  The
    butterfly schedule is fixed (stages i=1..n ascending), so the output bits
    are reproducible regardless of how callers batch.
    """
    check_model(model)
    check_direction(direction)
    if values.dtype != np.float64:
        raise ValueError("in-place transform requires a float64 array")
    n = _infer_n(values.shape[0])
    half = values.size // 2
    if n == 0:
        return 0

    tmp = np.empty(half, dtype=np.float64)
    batch = values.shape[1:] if values.ndim > 1 else ()
    additions = 0
    for i in range(n):
        step = 1 << i
        x = values.reshape((-1, 2, step) + batch)
        u = x[:, 0]
        w = x[:, 1]
        t = tmp.reshape(u.shape)
        if model == 5:
            # (u, w) -> (u+w, u-w), two ops per butterfly
            np.subtract(u, w, out=t)
            np.add(u, w, out=u)
            np.copyto(w, t)
            additions += 2 * half
            continue
        forward = direction == FORWARD
        if (model == 1 and forward) or (model == 4 and not forward):
            # [[1,1],[1,0]]: (u, w) -> (u+w, u)
            np.copyto(t, u)
            np.add(u, w, out=u)
            np.copyto(w, t)
        elif (model == 1 and not forward) or (model == 4 and forward):
            # [[0,1],[1,-1]]: (u, w) -> (w, u-w)
            np.subtract(u, w, out=t)
            np.copyto(u, w)
            np.copyto(w, t)
        elif model == 2:
            # [[1,1],[0,-1]]: (u, w) -> (u+w, -w); self-inverse
            np.add(u, w, out=u)
            np.negative(w, out=w)
        else:
            # model 3, [[1,0],[1,-1]]: (u, w) -> (u, u-w); self-inverse
            np.subtract(u, w, out=w)
        additions += half

    if model == 5 and direction == INVERSE:
        values *= 0.5**n
    return additions


def dsft(model: int, s: SetFunction) -> Spectrum:
    """Forward transform of a dense set function (out-of-place)."""
    arr = np.array(s.values)
    dsft_inplace(arr, model, FORWARD)
    return Spectrum.wrap(s.ground, model, arr)


def idsft(model: int, spectrum: Spectrum) -> SetFunction:
    """Inverse transform; the spectrum's model tag must match."""
    check_model(model)
    if spectrum.model != model:
        raise ValueError(
            f"spectrum is tagged model {spectrum.model}, cannot invert as model {model}"
        )
    arr = np.array(spectrum.coeffs)
    dsft_inplace(arr, model, INVERSE)
    return SetFunction.wrap(spectrum.ground, arr)


def _closed_entries(model: int, direction: str, rows, cols, n: int) -> np.ndarray:
    """Matrix entries at the given (broadcastable) row/col mask arrays."""
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    cond_name = _CONDITIONS[(model, direction)]
    full = (1 << n) - 1
    if cond_name == "disjoint":
        cond = (rows & cols) == 0
    elif cond_name == "cover":
        cond = (rows | cols) == full
    elif cond_name == "row_in_col":
        cond = (rows & ~cols) == 0
    elif cond_name == "col_in_row":
        cond = (cols & ~rows) == 0
    else:
        cond = np.ones(np.broadcast(rows, cols).shape, dtype=bool)
    sign = 1.0 - 2.0 * (popcount(rows & cols) & 1)
    out = np.where(cond, sign, 0.0)
    if model == 5 and direction == INVERSE:
        out = out * 0.5**n
    return out


def dsft_matrix(model: int, direction: str, n: int) -> np.ndarray:
    """Dense 2**n x 2**n transform matrix from the closed-form entries.

    For forward matrices rows are frequencies B and columns are sets A; for
    inverses the roles swap.  Guarded to n <= 12; this is an oracle for
    testing, not a compute path.
    """
    check_model(model)
    check_direction(direction)
    if n > MATRIX_MAX_N:
        raise ValueError(f"dense transform matrices are limited to n <= {MATRIX_MAX_N}")
    masks = np.arange(1 << n, dtype=np.int64)
    return _closed_entries(model, direction, masks[:, None], masks[None, :], n)


def kronecker_matrix(model: int, direction: str, n: int) -> np.ndarray:
    """Same matrix built by explicit Kronecker recursion (cross-check path)."""
    check_model(model)
    check_direction(direction)
    if n > MATRIX_MAX_N:
        raise ValueError(f"dense transform matrices are limited to n <= {MATRIX_MAX_N}")
    k = (FORWARD_KERNELS if direction == FORWARD else INVERSE_KERNELS)[model]
    out = np.array([[1.0]])
    for _ in range(n):
        out = np.kron(k, out)
    return out


def fourier_basis_entry(model: int, ground: GroundSet, B: int, A: int) -> float:
    """Entry A of the model's B-th Fourier basis vector, in O(1)."""
    check_model(model)
    B = ground.check_mask(B)
    A = ground.check_mask(A)
    return float(_closed_entries(model, INVERSE, A, B, ground.n))


def fourier_basis_vector(model: int, ground: GroundSet, B: int) -> SetFunction:
    """The B-th Fourier basis vector: column B of the inverse transform,
    evaluated entrywise without materializing the matrix."""
    check_model(model)
    B = ground.check_mask(B)
    masks = ground.masks()
    values = _closed_entries(model, INVERSE, masks, B, ground.n)
    return SetFunction.wrap(ground, np.ascontiguousarray(values, dtype=np.float64))
