# maninsigma/sigma_model.py
"""
Discretized Poisson-Lie sigma model on a rectangular worldsheet grid.

Fields live on sites (i, j) at xi = (i*h1, j*h2):
  X[i, j, k]        scalar fields X_k
  A[i, j, k, alpha] components of the one-forms A_k along d xi_alpha

Discretization:
 - action: one term per plaquette; forward differences averaged over the two
   parallel edges, corner-averaged A and P, weighted by h1*h2
 - first EOM  dX_i + P^ij A_j = 0     central differences at interior sites
 - second EOM dA_k + 1/2 d_k P^ij A_i^A_j = 0   per plaquette, dA_k as
   circulation / area
Wedge of one-forms: u ^ v = u_1 v_2 - u_2 v_1.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ChartBreakdown, InputError, ShapeError
from .lie_core import ManinTriple
from .poisson import bivector_at, partial_bivector
from .utils import XorShift64Star, log, read_json_file, write_json_file


@dataclass(frozen=True)
class WorldsheetGrid:
    n1: int
    n2: int
    h1: float
    h2: float

    def __post_init__(self):
        if int(self.n1) < 2 or int(self.n2) < 2:
            raise ShapeError(f"grid needs at least 2x2 sites, got {self.n1}x{self.n2}")
        if not (self.h1 > 0.0 and self.h2 > 0.0):
            raise ShapeError(f"grid spacings must be positive, got h1={self.h1}, h2={self.h2}")
        object.__setattr__(self, "n1", int(self.n1))
        object.__setattr__(self, "n2", int(self.n2))
        object.__setattr__(self, "h1", float(self.h1))
        object.__setattr__(self, "h2", float(self.h2))

    @property
    def shape(self):
        return (self.n1, self.n2)

    def coordinates(self):
        """xi_1, xi_2 arrays of shape (n1, n2)."""
        return np.meshgrid(np.arange(self.n1) * self.h1, np.arange(self.n2) * self.h2, indexing="ij")


@dataclass(frozen=True, eq=False)
class FieldConfig:
    X: np.ndarray
    A: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.X, dtype=float)
        a = np.asarray(self.A, dtype=float)
        if x.ndim != 3:
            raise ShapeError(f"X must have shape (n1, n2, n), got {x.shape}")
        if a.shape != x.shape + (2,):
            raise ShapeError(f"A must have shape {x.shape + (2,)}, got {a.shape}")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(a))):
            raise InputError("field configuration contains non-finite values")
        object.__setattr__(self, "X", x)
        object.__setattr__(self, "A", a)

    @property
    def dim(self):
        return self.X.shape[2]

    def check(self, triple: ManinTriple, grid: WorldsheetGrid):
        if self.X.shape[:2] != grid.shape:
            raise ShapeError(f"fields are on a {self.X.shape[0]}x{self.X.shape[1]} grid, expected {grid.n1}x{grid.n2}")
        if self.dim != triple.dim:
            raise ShapeError(f"fields carry n = {self.dim} components, triple {triple.name!r} has n = {triple.dim}")


@dataclass(frozen=True, eq=False)
class EOMResidual:
    r1: np.ndarray  # (n1-2, n2-2, n, 2)
    r2: np.ndarray  # (n1-1, n2-1, n)

    @property
    def max_r1(self):
        return float(np.abs(self.r1).max()) if self.r1.size else 0.0

    @property
    def max_r2(self):
        return float(np.abs(self.r2).max()) if self.r2.size else 0.0

    @property
    def rms_r1(self):
        return float(np.sqrt(np.mean(self.r1 ** 2))) if self.r1.size else 0.0

    @property
    def rms_r2(self):
        return float(np.sqrt(np.mean(self.r2 ** 2))) if self.r2.size else 0.0

    @property
    def max_norm(self):
        return max(self.max_r1, self.max_r2)


def _corner_average(v):
    return 0.25 * (v[:-1, :-1] + v[1:, :-1] + v[:-1, 1:] + v[1:, 1:])


def _wedge(a):
    """W[..., i, j] = A_i ^ A_j for one-forms a[..., k, alpha]."""
    a1, a2 = a[..., 0], a[..., 1]
    return np.einsum("...i,...j->...ij", a1, a2) - np.einsum("...i,...j->...ij", a2, a1)


def bivector_field(triple: ManinTriple, grid: WorldsheetGrid, fields: FieldConfig, frame="invariant"):
    fields.check(triple, grid)
    n = triple.dim
    out = np.zeros((grid.n1, grid.n2, n, n))
    for i in range(grid.n1):
        for j in range(grid.n2):
            try:
                out[i, j] = bivector_at(triple, fields.X[i, j], frame).matrix
            except ChartBreakdown as e:
                raise ChartBreakdown(e.point, e.det_a, f"worldsheet site ({i + 1},{j + 1})", matrix=e.matrix)
    return out


def exterior_derivative(grid: WorldsheetGrid, a):
    """Per-plaquette (d A_k)_{12}: circulation of A_k around the plaquette over its area."""
    a = np.asarray(a, dtype=float)
    h1, h2 = grid.h1, grid.h2
    bottom = 0.5 * (a[:-1, :-1, :, 0] + a[1:, :-1, :, 0]) * h1
    right = 0.5 * (a[1:, :-1, :, 1] + a[1:, 1:, :, 1]) * h2
    top = 0.5 * (a[:-1, 1:, :, 0] + a[1:, 1:, :, 0]) * h1
    left = 0.5 * (a[:-1, :-1, :, 1] + a[:-1, 1:, :, 1]) * h2
    return (bottom + right - top - left) / (h1 * h2)


def action_S2(triple: ManinTriple, grid: WorldsheetGrid, fields: FieldConfig, frame="invariant"):
    """S_2 = sum over plaquettes of (sum_i dX_i ^ A_i - 1/2 P^ij A_i ^ A_j) h1 h2."""
    p = bivector_field(triple, grid, fields, frame)
    x, a = fields.X, fields.A
    dx1 = 0.5 * ((x[1:, :-1] - x[:-1, :-1]) + (x[1:, 1:] - x[:-1, 1:])) / grid.h1
    dx2 = 0.5 * ((x[:-1, 1:] - x[:-1, :-1]) + (x[1:, 1:] - x[1:, :-1])) / grid.h2
    a_avg = _corner_average(a)
    p_avg = _corner_average(p)
    kinetic = np.sum(dx1 * a_avg[..., 1] - dx2 * a_avg[..., 0], axis=-1)
    potential = 0.5 * np.einsum("abij,abij->ab", p_avg, _wedge(a_avg))
    return float(np.sum(kinetic - potential) * grid.h1 * grid.h2)


def eom_coefficients(triple: ManinTriple, p, convention="at-point", frame="invariant"):
    """C[k][i][j] = 1/2 (d_k P^ij - d_k P^ji), the coefficient of A_i ^ A_j in the dA_k equation."""
    n = triple.dim
    out = np.zeros((n, n, n))
    for k in range(n):
        dp = partial_bivector(triple, p, k, convention=convention, frame=frame)
        out[k] = 0.5 * (dp - dp.T)
    return out


def action_coefficients(triple: ManinTriple, p, frame="invariant"):
    """{(i, j): -P^ij} for 1-based i < j, the A_i ^ A_j coefficients of the action density."""
    m = bivector_at(triple, p, frame).matrix
    n = triple.dim
    return {(i + 1, j + 1): float(-m[i, j]) for i in range(n) for j in range(i + 1, n)}


def eom_residuals(triple: ManinTriple, grid: WorldsheetGrid, fields: FieldConfig,
                  convention="at-point", frame="invariant"):
    if grid.n1 < 3 or grid.n2 < 3:
        raise ShapeError(f"equations of motion need at least 3x3 sites, got {grid.n1}x{grid.n2}")
    p = bivector_field(triple, grid, fields, frame)
    x, a = fields.X, fields.A
    n = triple.dim

    dx = np.stack(
        [
            (x[2:, 1:-1] - x[:-2, 1:-1]) / (2.0 * grid.h1),
            (x[1:-1, 2:] - x[1:-1, :-2]) / (2.0 * grid.h2),
        ],
        axis=-1,
    )
    r1 = dx + np.einsum("abij,abjs->abis", p[1:-1, 1:-1], a[1:-1, 1:-1])

    dp = np.zeros((grid.n1, grid.n2, n, n, n))
    for i in range(grid.n1):
        for j in range(grid.n2):
            for k in range(n):
                dp[i, j, k] = partial_bivector(triple, x[i, j], k, convention=convention, frame=frame)
    r2 = exterior_derivative(grid, a) + 0.5 * np.einsum(
        "abkij,abij->abk", _corner_average(dp), _wedge(_corner_average(a))
    )
    return EOMResidual(r1=r1, r2=r2)


# ---------------------
# Field configurations
# ---------------------
def zero_fields(grid: WorldsheetGrid, n):
    return FieldConfig(np.zeros((grid.n1, grid.n2, n)), np.zeros((grid.n1, grid.n2, n, 2)))


def manufactured_semi_abelian(grid: WorldsheetGrid):
    """
    Exact solution for semi_abelian4 (P^21 = X_2): X = (0, e^{xi_1}), A_1 = -d xi_1, A_2 = 0.
    """
    xi1, _ = grid.coordinates()
    x = np.zeros((grid.n1, grid.n2, 2))
    x[..., 1] = np.exp(xi1)
    a = np.zeros((grid.n1, grid.n2, 2, 2))
    a[..., 0, 0] = -1.0
    return FieldConfig(x, a)


def random_fields(grid: WorldsheetGrid, n, seed, radius=0.4):
    rng = XorShift64Star(seed)
    x = np.array([rng.uniform(-radius, radius) for _ in range(grid.n1 * grid.n2 * n)])
    a = np.array([rng.uniform(-1.0, 1.0) for _ in range(grid.n1 * grid.n2 * n * 2)])
    return FieldConfig(x.reshape(grid.n1, grid.n2, n), a.reshape(grid.n1, grid.n2, n, 2))


def convergence_rates(spacings, errors):
    """Observed orders log(e_{k-1}/e_k) / log(h_{k-1}/h_k)."""
    rates = []
    for k in range(1, len(errors)):
        e0, e1 = errors[k - 1], errors[k]
        if e0 > 0.0 and e1 > 0.0:
            rates.append(math.log(e0 / e1) / math.log(spacings[k - 1] / spacings[k]))
        else:
            rates.append(float("nan"))
    return rates


def manufactured_convergence(triple: ManinTriple, sizes=(16, 32, 64), extent=0.5, convention="at-point"):
    """
    Max EOM residual of the semi-abelian manufactured solution on n x n grids of
    spacing extent / n. Returns rows {n, h, max_residual, ratio, rate}.
    """
    rows = []
    for n in sizes:
        h = extent / n
        grid = WorldsheetGrid(n, n, h, h)
        res = eom_residuals(triple, grid, manufactured_semi_abelian(grid), convention=convention)
        rows.append({"n": int(n), "h": h, "max_residual": res.max_norm})
        log("SigmaModel", f"manufactured n={n} h={h:.5g} max residual {res.max_norm:.3e}")
    rates = convergence_rates([r["h"] for r in rows], [r["max_residual"] for r in rows])
    for k, row in enumerate(rows):
        if k == 0:
            row["ratio"], row["rate"] = float("nan"), float("nan")
        else:
            prev = rows[k - 1]["max_residual"]
            row["ratio"] = prev / row["max_residual"] if row["max_residual"] > 0.0 else float("inf")
            row["rate"] = rates[k - 1]
    return rows


# ---------------------
# Field files
# ---------------------
def fields_to_dict(grid: WorldsheetGrid, fields: FieldConfig):
    n1, n2 = grid.shape
    return {
        "grid": {"n1": n1, "n2": n2, "h1": grid.h1, "h2": grid.h2},
        "dim": fields.dim,
        "X": fields.X.reshape(n1 * n2, fields.dim).tolist(),
        "A": fields.A.reshape(n1 * n2, fields.dim, 2).tolist(),
    }


def fields_from_dict(doc, source="<fields>"):
    """Inverse of fields_to_dict; sites are listed row-major, i outer."""
    try:
        g = doc["grid"]
        grid = WorldsheetGrid(int(g["n1"]), int(g["n2"]), float(g["h1"]), float(g["h2"]))
        x = np.asarray(doc["X"], dtype=float)
        a = np.asarray(doc["A"], dtype=float)
    except (KeyError, TypeError, ValueError) as e:
        raise ShapeError(f"{source}: malformed field file ({e.__class__.__name__}: {e})")
    sites = grid.n1 * grid.n2
    if x.ndim != 2 or x.shape[0] != sites:
        raise ShapeError(f"{source}: field 'X' must list {sites} sites of n values, got shape {x.shape}")
    n = x.shape[1]
    if a.shape != (sites, n, 2):
        raise ShapeError(f"{source}: field 'A' must have shape {(sites, n, 2)}, got {a.shape}")
    return grid, FieldConfig(x.reshape(grid.n1, grid.n2, n), a.reshape(grid.n1, grid.n2, n, 2))


def load_field_file(path):
    return fields_from_dict(read_json_file(path), source=str(path))


def dump_field_file(path, grid: WorldsheetGrid, fields: FieldConfig):
    doc = fields_to_dict(grid, fields)
    write_json_file(path, doc)
    return doc
