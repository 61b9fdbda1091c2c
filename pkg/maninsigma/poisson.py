# maninsigma/poisson.py
"""
Poisson-Lie bivector on G from the adjoint blocks, P(g) = b(g) a(g)^-1.

Frames:
 - "invariant": the components returned by b a^-1, i.e. in the right-invariant
   frame R_i(g) = T_i g. This is the form the closed expressions are written in.
 - "coordinate": R (b a^-1) R^T with R from adjoint.right_invariant_frame, the
   components in the coordinate basis d/dX_mu. The Jacobi identity is checked here.
Both agree to first order at the origin.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .adjoint import (
    Ad_of_inverse_point,
    Ad_of_point,
    GroupPoint,
    as_point,
    extract_blocks,
    maurer_cartan_matrix,
    right_invariant_frame,
)
from .errors import ChartBreakdown, EvaluationError, InputError, ShapeError, SingularMatrixError
from .lie_core import ManinTriple
from .matrix_num import det, mat_inv

ANTISYMMETRY_TOL = 1e-8
DEGENERATE_THRESHOLD = 1e-6
FRAMES = ("invariant", "coordinate")
CONVENTIONS = ("at-point", "k-slice-zero")


@dataclass(frozen=True, eq=False)
class BivectorEval:
    point: GroupPoint
    matrix: np.ndarray
    frame: str = "invariant"

    def entry(self, i, j):
        """P^{ij} with 1-based indices."""
        return float(self.matrix[i - 1, j - 1])


@dataclass(frozen=True, eq=False)
class LinearizationTensor:
    # values[k][i][j] = d_k P^{ij} at the origin
    values: np.ndarray


def _frame(frame):
    if frame not in FRAMES:
        raise InputError(f"unknown frame {frame!r}; expected one of {FRAMES}")
    return frame


def _invariant_matrix(triple: ManinTriple, p: GroupPoint):
    double = triple.double
    blocks = extract_blocks(Ad_of_inverse_point(double, p))
    try:
        a_inv = mat_inv(blocks.a)
    except SingularMatrixError:
        raise ChartBreakdown(p.coords, det(blocks.a))
    return blocks.b @ a_inv


def bivector_at(triple: ManinTriple, p, frame="invariant"):
    _frame(frame)
    p = as_point(p)
    if p.dim != triple.dim:
        raise ShapeError(f"point has {p.dim} coordinates, triple {triple.name!r} has n = {triple.dim}")
    m = _invariant_matrix(triple, p)

    asym = float(np.abs(m + m.T).max())
    if asym > ANTISYMMETRY_TOL:
        raise EvaluationError(
            f"b a^-1 is not antisymmetric at X={p.as_tuple()} (max |P + P^T| = {asym:.3e}); "
            "the bracket convention is inconsistent"
        )

    if frame == "coordinate":
        try:
            r = right_invariant_frame(triple.double, p)
        except SingularMatrixError:
            raise ChartBreakdown(p.coords, det(maurer_cartan_matrix(triple.double, p)),
                                 "right-invariant frame degenerates", matrix="dg g^-1")
        m = r @ m @ r.T
    return BivectorEval(p, m, frame)


def coordinate_bivector_at(triple: ManinTriple, p):
    return bivector_at(triple, p, frame="coordinate")


def _expm1_ratio(c, x):
    """(e^{c x} - 1) / c, continuous through c = 0."""
    if abs(c) > DEGENERATE_THRESHOLD:
        return np.expm1(c * x) / c
    u = c * x
    return x * (1.0 + u / 2.0 + u * u / 6.0 + u * u * u / 24.0)


def bivector_closed_form_4d(c12_1, c12_2, f12_1, f12_2, p):
    """
    Closed form for n = 2 with [T_1,T_2] = c12_1 T_1 + c12_2 T_2 and
    [T~^1,T~^2] = f12_1 T~^1 + f12_2 T~^2. Returns the 2x2 invariant-frame matrix.
    """
    coords = as_point(p).coords
    if coords.shape[0] != 2:
        raise ShapeError(f"the closed form takes 2 coordinates, got {coords.shape[0]}")
    x1, x2 = (float(v) for v in coords)
    if abs(c12_1) > DEGENERATE_THRESHOLD and abs(c12_2) > DEGENERATE_THRESHOLD:
        p21 = (
            c12_1 * f12_1 * np.expm1(c12_2 * x1)
            - c12_2 * f12_2 * np.exp(c12_2 * x1) * np.expm1(-c12_1 * x2)
        ) / (c12_1 * c12_2)
    else:
        p21 = f12_1 * _expm1_ratio(c12_2, x1) + f12_2 * np.exp(c12_2 * x1) * _expm1_ratio(-c12_1, x2)
    return np.array([[0.0, -p21], [p21, 0.0]])


def _step(x, h):
    if h is not None:
        if h <= 0.0:
            raise InputError(f"finite-difference step must be positive, got {h}")
        return float(h)
    return 1e-5 * max(1.0, float(np.abs(x).max()) if x.size else 1.0)


def partial_bivector(triple: ManinTriple, p, k, convention="at-point", h=None, frame="invariant"):
    """Central difference d_k P^{ij}; "k-slice-zero" evaluates at X with X_k set to 0."""
    if convention not in CONVENTIONS:
        raise InputError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    x = np.array(as_point(p).coords, dtype=float)
    if not 0 <= k < x.shape[0]:
        raise ShapeError(f"derivative index {k} outside 0..{x.shape[0] - 1}")
    if convention == "k-slice-zero":
        x[k] = 0.0
    step = _step(x, h)
    plus, minus = x.copy(), x.copy()
    plus[k] += step
    minus[k] -= step
    return (bivector_at(triple, plus, frame).matrix - bivector_at(triple, minus, frame).matrix) / (2.0 * step)


def jacobi_residual_of(field: Callable[[np.ndarray], np.ndarray], p, h=None):
    """
    max |P^il d_l P^jk + P^jl d_l P^ki + P^kl d_l P^ij| for a bivector field X -> P(X),
    derivatives by central differences.
    """
    x = np.array(as_point(p).coords, dtype=float)
    n = x.shape[0]
    if n < 3:
        return 0.0
    step = _step(x, h)
    pm = np.asarray(field(x), dtype=float)
    dp = np.zeros((n, n, n))
    for l in range(n):
        plus, minus = x.copy(), x.copy()
        plus[l] += step
        minus[l] -= step
        dp[l] = (np.asarray(field(plus)) - np.asarray(field(minus))) / (2.0 * step)
    schouten = (
        np.einsum("il,ljk->ijk", pm, dp)
        + np.einsum("jl,lki->ijk", pm, dp)
        + np.einsum("kl,lij->ijk", pm, dp)
    )
    return float(np.abs(schouten).max())


def jacobi_residual(triple: ManinTriple, p, h=None):
    return jacobi_residual_of(lambda x: coordinate_bivector_at(triple, x).matrix, p, h)


def multiplicativity_residual(triple: ManinTriple, p, split):
    """
    max |P(g1 g2) - P(g1) - A P(g2) A^T| with g1 the first `split` exponential
    factors, g2 the rest and A the g-block of Ad_{g1}.
    """
    x = np.array(as_point(p).coords, dtype=float)
    n = x.shape[0]
    if not 1 <= split < n:
        raise InputError(f"split must lie in 1..{n - 1}, got {split}")
    first, second = x.copy(), x.copy()
    first[split:] = 0.0
    second[:split] = 0.0
    a = Ad_of_point(triple.double, first)[:n, :n]
    expected = bivector_at(triple, first).matrix + a @ bivector_at(triple, second).matrix @ a.T
    return float(np.abs(bivector_at(triple, x).matrix - expected).max())


def linearize(triple: ManinTriple, h=1e-6):
    n = triple.dim
    origin = np.zeros(n)
    values = np.zeros((n, n, n))
    for k in range(n):
        values[k] = partial_bivector(triple, origin, k, h=h)
    return LinearizationTensor(values)


def fit_linearization_sign(lin: LinearizationTensor, f, tol=1e-6):
    """
    The sign s with L[k][i][j] = s f^ij_k, or None. Returns (sign, max error).
    """
    target = np.einsum("ijk->kij", np.asarray(f, dtype=float))
    best: Optional[tuple] = None
    for sign in (-1, 1):
        err = float(np.abs(lin.values - sign * target).max()) if target.size else 0.0
        if err <= tol:
            return sign, err
        if best is None or err < best[1]:
            best = (None, err)
    return best
