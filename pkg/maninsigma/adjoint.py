# maninsigma/adjoint.py
"""
Adjoint action of the group G = exp(g) inside the Drinfel'd double.

- Matrix convention: column B of ad_A holds the components of [E_A, E_B],
  i.e. (ad_A)[C][B] = D[A][B][C]
- A point X of G is g = e^{X_1 T_1} ... e^{X_n T_n}
- For such g the adjoint matrix is block upper-triangular because g is a subalgebra
- The blocks a, b, d are read off Ad_{g^-1} = [[a^T, b^T], [0, d^T]]
"""

from dataclasses import dataclass

import numpy as np

from .errors import EvaluationError, ShapeError
from .lie_core import DoubleStructure
from .matrix_num import as_matrix, block, identity, mat_exp, mat_inv, transpose

TRIANGULAR_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GroupPoint:
    coords: np.ndarray

    def __post_init__(self):
        x = np.array(self.coords, dtype=float).reshape(-1)
        if not np.all(np.isfinite(x)):
            raise EvaluationError(f"group point has non-finite coordinates: {x}")
        x.setflags(write=False)
        object.__setattr__(self, "coords", x)

    @property
    def dim(self):
        return self.coords.shape[0]

    def as_tuple(self):
        return tuple(float(v) for v in self.coords)


@dataclass(frozen=True, eq=False)
class AdjointBlocks:
    a: np.ndarray
    b: np.ndarray
    d: np.ndarray


def as_point(p):
    return p if isinstance(p, GroupPoint) else GroupPoint(p)


def _check_point(double: DoubleStructure, p):
    p = as_point(p)
    if p.dim != double.half_dim:
        raise ShapeError(f"point has {p.dim} coordinates but the group has dimension {double.half_dim}")
    return p


def ad_matrix(double: DoubleStructure, index):
    if not 0 <= index < double.dim:
        raise ShapeError(f"basis index {index} outside 0..{double.dim - 1}")
    return double.d[index].T.copy()


def Ad_of_point(double: DoubleStructure, p):
    """Ad_g = e^{X_1 ad_1} ... e^{X_n ad_n}."""
    p = _check_point(double, p)
    result = identity(double.dim)
    for i, x in enumerate(p.coords):
        if x != 0.0:
            result = result @ mat_exp(x * ad_matrix(double, i))
    return result


def Ad_of_inverse_point(double: DoubleStructure, p):
    """Ad_{g^-1} = e^{-X_n ad_n} ... e^{-X_1 ad_1}."""
    p = _check_point(double, p)
    result = identity(double.dim)
    for i in range(p.dim - 1, -1, -1):
        x = p.coords[i]
        if x != 0.0:
            result = result @ mat_exp(-x * ad_matrix(double, i))
    return result


def _halves(adj):
    adj = as_matrix(adj, "adjoint matrix")
    if adj.shape[0] != adj.shape[1] or adj.shape[0] % 2:
        raise ShapeError(f"adjoint matrix must be square of even size, got {adj.shape}")
    return adj, adj.shape[0] // 2


def lower_left_defect(adj):
    adj, n = _halves(adj)
    if n == 0:
        return 0.0
    return float(np.abs(block(adj, (n, 2 * n), (0, n))).max())


def extract_blocks(adj_inv, tol=TRIANGULAR_TOL):
    """Blocks of Ad_{g^-1}: a = TL^T, b = TR^T, d = BR^T."""
    adj_inv, n = _halves(adj_inv)
    defect = lower_left_defect(adj_inv)
    if defect > tol:
        raise EvaluationError(
            f"adjoint matrix is not block upper-triangular (lower-left max {defect:.3e}); "
            "check the bracket and column conventions"
        )
    return AdjointBlocks(
        a=transpose(block(adj_inv, (0, n), (0, n))),
        b=transpose(block(adj_inv, (0, n), (n, 2 * n))),
        d=transpose(block(adj_inv, (n, 2 * n), (n, 2 * n))),
    )


def blocks_from_forward(adj, tol=TRIANGULAR_TOL):
    """Same blocks read from Ad_g = [[a^-T, -a^-T b^T d^-T], [0, d^-T]]."""
    adj, n = _halves(adj)
    defect = lower_left_defect(adj)
    if defect > tol:
        raise EvaluationError(f"adjoint matrix is not block upper-triangular (lower-left max {defect:.3e})")
    a = transpose(mat_inv(block(adj, (0, n), (0, n))))
    d = transpose(mat_inv(block(adj, (n, 2 * n), (n, 2 * n))))
    b = -d @ block(adj, (0, n), (n, 2 * n)).T @ a
    return AdjointBlocks(a=a, b=b, d=d)


def pairing_defect(double: DoubleStructure, adj):
    adj = as_matrix(adj, "adjoint matrix")
    p = double.pairing
    return float(np.abs(adj.T @ p @ adj - p).max())


def maurer_cartan_matrix(double: DoubleStructure, p):
    """
    Columns are the g-components of Ad_{g<mu}(T_mu), g<mu = e^{X_1 T_1}...e^{X_{mu-1} T_{mu-1}},
    so that dg g^-1 = sum_mu dX_mu Ad_{g<mu}(T_mu).
    """
    p = _check_point(double, p)
    n = double.half_dim
    frame = np.zeros((n, n))
    prefix = identity(double.dim)
    for mu in range(n):
        frame[:, mu] = prefix[:n, mu]
        x = p.coords[mu]
        if x != 0.0:
            prefix = prefix @ mat_exp(x * ad_matrix(double, mu))
    return frame


def right_invariant_frame(double: DoubleStructure, p):
    """Column i: coordinate components of the right-invariant field R_i(g) = T_i g."""
    return mat_inv(maurer_cartan_matrix(double, p))
