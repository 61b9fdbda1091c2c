# maninsigma/matrix_num.py
"""
Dense real matrix helpers for the adjoint computations.

- Matrices are float64 numpy arrays, at most 32x32 (the double of a 16-dim algebra)
- mat_exp: scaling and squaring around a truncated Taylor series
- mat_inv / det: Gaussian elimination with partial pivoting; a pivot below
  PIVOT_RTOL * max|m| raises SingularMatrixError
"""

import math

import numpy as np

from .errors import EvaluationError, ShapeError, SingularMatrixError

MAX_DIM = 32
EXP_NORM_LIMIT = 1e3
PIVOT_RTOL = 1e-12

# Taylor degree for ||m/2^s||_1 <= 1/2: the remainder is below 0.5^19/19! ~ 1.6e-23
_TAYLOR_DEGREE = 18
_SCALED_NORM = 0.5


def as_matrix(m, name="matrix"):
    a = np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise ShapeError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if a.shape[0] > MAX_DIM or a.shape[1] > MAX_DIM:
        raise ShapeError(f"{name} has shape {a.shape}; the limit is {MAX_DIM}x{MAX_DIM}")
    if not np.all(np.isfinite(a)):
        raise EvaluationError(f"{name} contains non-finite entries")
    return a


def _square(m, name):
    a = as_matrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {a.shape}")
    return a


def identity(n):
    return np.eye(int(n))


def transpose(m):
    return as_matrix(m).T.copy()


def mat_mul(a, b):
    a = as_matrix(a, "left factor")
    b = as_matrix(b, "right factor")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def one_norm(m):
    a = as_matrix(m)
    if a.size == 0:
        return 0.0
    return float(np.abs(a).sum(axis=0).max())


def block(m, rows, cols):
    """Copy of the sub-matrix m[rows, cols]; rows and cols are (start, stop) half-open ranges."""
    a = as_matrix(m)
    r0, r1 = rows
    c0, c1 = cols
    if not (0 <= r0 <= r1 <= a.shape[0] and 0 <= c0 <= c1 <= a.shape[1]):
        raise ShapeError(f"block rows={rows} cols={cols} out of range for shape {a.shape}")
    return a[r0:r1, c0:c1].copy()


def mat_exp(m):
    """
    e^m by scaling and squaring: pick s with ||m/2^s||_1 <= 1/2, evaluate the
    Taylor polynomial by Horner's rule, then square s times.
    """
    a = _square(m, "exponent")
    n = a.shape[0]
    norm = one_norm(a)
    if norm > EXP_NORM_LIMIT:
        raise EvaluationError(f"matrix exponential overflow: ||m||_1 = {norm:.3e} exceeds {EXP_NORM_LIMIT:g}")

    s = 0
    if norm > _SCALED_NORM:
        s = int(math.ceil(math.log2(norm / _SCALED_NORM)))
    scaled = a / (2.0 ** s)

    coeffs = [1.0]
    for i in range(_TAYLOR_DEGREE):
        coeffs.append(coeffs[-1] / (i + 1))

    eye = np.eye(n)
    result = eye * coeffs[_TAYLOR_DEGREE]
    for i in range(_TAYLOR_DEGREE - 1, -1, -1):
        result = scaled @ result + eye * coeffs[i]

    for _ in range(s):
        result = result @ result

    if not np.all(np.isfinite(result)):
        raise EvaluationError("matrix exponential produced non-finite entries")
    return result


def _eliminate(a):
    """
    In-place Gauss-Jordan elimination of [a | I] with partial pivoting.
    Returns (inverse, determinant).
    """
    n = a.shape[0]
    work = np.hstack([a, np.eye(n)])
    scale = float(np.abs(a).max()) if a.size else 0.0
    threshold = PIVOT_RTOL * scale
    det = 1.0
    for col in range(n):
        pivot_row = col + int(np.argmax(np.abs(work[col:, col])))
        pivot = work[pivot_row, col]
        if scale == 0.0 or abs(pivot) < threshold:
            raise SingularMatrixError(
                f"matrix is singular to working precision (pivot {abs(pivot):.3e} in column {col + 1})"
            )
        if pivot_row != col:
            work[[col, pivot_row]] = work[[pivot_row, col]]
            det = -det
        det *= pivot
        work[col] /= pivot
        others = np.arange(n) != col
        work[others] -= np.outer(work[others, col], work[col])
    return work[:, n:].copy(), det


def mat_inv(m):
    a = _square(m, "matrix to invert")
    if a.shape[0] == 0:
        return a.copy()
    inv, _ = _eliminate(a)
    return inv


def det(m):
    a = _square(m, "matrix")
    if a.shape[0] == 0:
        return 1.0
    try:
        _, d = _eliminate(a)
    except SingularMatrixError:
        return 0.0
    return float(d)
