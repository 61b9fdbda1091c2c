# maninsigma/lie_core.py
"""
Structure constants, Manin triples and the assembled Drinfel'd double.

Basis of the double, 0-based: T_1..T_n are indices 0..n-1, T~^1..T~^n are n..2n-1.

  [T_i, T_j]   = c_ij^k T_k
  [T~^i, T~^j] = f^ij_k T~^k
  [T_i, T~^j]  = f^jk_i T_k - c_ik^j T~^k

The pairing is <T_i, T~^j> = delta_i^j with both halves isotropic.
Checks never raise on a failed property; they return a ValidationReport.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Tuple

import numpy as np

from .errors import InputError, ParseError, ShapeError, SingularMatrixError
from .matrix_num import as_matrix, mat_inv

ALGEBRA_TOL = 1e-12
MAX_HALF_DIM = 16


@dataclass(frozen=True, eq=False)
class StructureConstants:
    values: np.ndarray

    def __post_init__(self):
        t = np.array(self.values, dtype=float)
        if t.ndim != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]):
            raise ShapeError(f"structure constants must have shape (n, n, n), got {t.shape}")
        if t.shape[0] > 2 * MAX_HALF_DIM:
            raise ShapeError(f"dimension {t.shape[0]} exceeds {2 * MAX_HALF_DIM}")
        if not np.all(np.isfinite(t)):
            raise InputError("structure constants contain non-finite entries")
        t.setflags(write=False)
        object.__setattr__(self, "values", t)

    @property
    def dim(self):
        return self.values.shape[0]

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.values.shape == other.values.shape and bool(np.array_equal(self.values, other.values))

    @classmethod
    def zeros(cls, dim):
        return cls(np.zeros((dim, dim, dim)))


@dataclass(frozen=True)
class ManinTriple:
    g: StructureConstants
    g_dual: StructureConstants
    name: str = "unnamed"

    def __post_init__(self):
        if self.g.dim != self.g_dual.dim:
            raise ShapeError(f"triple {self.name!r}: dim g = {self.g.dim} but dim g~ = {self.g_dual.dim}")
        if self.g.dim < 1 or self.g.dim > MAX_HALF_DIM:
            raise ShapeError(f"triple {self.name!r}: n = {self.g.dim} must lie in 1..{MAX_HALF_DIM}")

    @property
    def dim(self):
        return self.g.dim

    @property
    def c(self):
        return self.g.values

    @property
    def f(self):
        return self.g_dual.values

    @cached_property
    def double(self):
        return assemble_double(self)


@dataclass(frozen=True, eq=False)
class DoubleStructure:
    values: StructureConstants
    pairing: np.ndarray
    half_dim: int

    @property
    def dim(self):
        return self.values.dim

    @property
    def d(self):
        return self.values.values


@dataclass(frozen=True)
class ValidationReport:
    name: str
    passed: bool
    max_residual: float
    worst_index: Optional[Tuple[int, ...]]
    tolerance: float

    def describe(self):
        where = "" if self.worst_index is None else " at (" + ",".join(str(i) for i in self.worst_index) + ")"
        verdict = "ok" if self.passed else "FAILED"
        return f"{self.name}: {verdict} max residual {self.max_residual:.3e}{where} (tol {self.tolerance:g})"


def _report(name, residual, tol):
    if residual.size == 0:
        return ValidationReport(name, True, 0.0, None, tol)
    mag = np.abs(residual)
    flat = int(np.argmax(mag))
    worst = float(mag.flat[flat])
    idx = tuple(int(i) + 1 for i in np.unravel_index(flat, residual.shape)) if worst > 0.0 else None
    return ValidationReport(name, bool(worst <= tol), worst, idx, tol)


def structure_from_brackets(dim, entries: Iterable, source="<brackets>"):
    """
    Dense constants from 1-based (i, j, k, value) entries.
    A listed entry fills its (j, i, k) partner unless that partner is listed too.
    """
    dim = int(dim)
    if dim < 1 or dim > MAX_HALF_DIM:
        raise ParseError(f"dimension {dim} must lie in 1..{MAX_HALF_DIM}", source)
    listed = {}
    for pos, entry in enumerate(entries):
        try:
            i, j, k, value = entry
            i, j, k = int(i), int(j), int(k)
            value = float(value)
        except (TypeError, ValueError):
            raise ParseError(f"entry #{pos + 1} must be [i, j, k, value], got {entry!r}", source)
        for idx in (i, j, k):
            if idx < 1 or idx > dim:
                raise ParseError(f"entry #{pos + 1} ({i},{j},{k}): index {idx} outside 1..{dim}", source)
        if (i, j, k) in listed:
            raise ParseError(f"duplicate entry ({i},{j},{k})", source)
        listed[(i, j, k)] = value

    t = np.zeros((dim, dim, dim))
    for (i, j, k), value in listed.items():
        t[i - 1, j - 1, k - 1] = value
        if (j, i, k) not in listed:
            t[j - 1, i - 1, k - 1] = -value
    return StructureConstants(t)


def check_antisymmetry(s: StructureConstants, name="antisymmetry"):
    t = s.values
    return _report(name, t + t.transpose(1, 0, 2), ALGEBRA_TOL)


def jacobiator(t):
    """J[i,j,k,l] = c_ij^m c_mk^l + c_jk^m c_mi^l + c_ki^m c_mj^l."""
    return (
        np.einsum("ijm,mkl->ijkl", t, t)
        + np.einsum("jkm,mil->ijkl", t, t)
        + np.einsum("kim,mjl->ijkl", t, t)
    )


def check_jacobi(s: StructureConstants, name="jacobi"):
    return _report(name, jacobiator(s.values), ALGEBRA_TOL)


def assemble_double(triple: ManinTriple):
    if triple.g.dim != triple.g_dual.dim:
        raise ShapeError("both halves of a triple must have the same dimension")
    n = triple.dim
    c, f = triple.c, triple.f
    d = np.zeros((2 * n, 2 * n, 2 * n))
    d[:n, :n, :n] = c
    d[n:, n:, n:] = f
    # [T_i, T~^j] = f^jk_i T_k - c_ik^j T~^k
    d[:n, n:, :n] = np.einsum("jki->ijk", f)
    d[:n, n:, n:] = -np.einsum("ikj->ijk", c)
    d[n:, :n, :] = -d[:n, n:, :].transpose(1, 0, 2)

    pairing = np.zeros((2 * n, 2 * n))
    pairing[:n, n:] = np.eye(n)
    pairing[n:, :n] = np.eye(n)
    pairing.setflags(write=False)
    return DoubleStructure(StructureConstants(d), pairing, n)


def check_pairing_invariance(double: DoubleStructure, name="pairing invariance"):
    """Residual <[x,y],z> + <y,[x,z]> over all basis triples."""
    d, p = double.d, double.pairing
    residual = np.einsum("xym,mz->xyz", d, p) + np.einsum("ym,xzm->xyz", p, d)
    return _report(name, residual, ALGEBRA_TOL)


def change_basis(triple: ManinTriple, a):
    """
    New basis T'_i = A^k_i T_k, T~'^j = (A^-1)^j_k T~^k; the pairing stays canonical.
    """
    a = as_matrix(a, "basis change")
    n = triple.dim
    if a.shape != (n, n):
        raise ShapeError(f"basis change must be {n}x{n}, got {a.shape}")
    try:
        b = mat_inv(a)
    except SingularMatrixError as e:
        raise InputError(f"basis change is not invertible: {e}")
    c_new = np.einsum("ki,lj,klm,pm->ijp", a, a, triple.c, b)
    f_new = np.einsum("ik,jl,klm,mp->ijp", b, b, triple.f, a)
    return ManinTriple(StructureConstants(c_new), StructureConstants(f_new), name=triple.name)


def swap_roles(triple: ManinTriple, name=None):
    return ManinTriple(triple.g_dual, triple.g, name=name or f"{triple.name}~")


def validate_triple(triple: ManinTriple):
    reports = [
        check_antisymmetry(triple.g, "antisymmetry of c"),
        check_antisymmetry(triple.g_dual, "antisymmetry of f"),
        check_jacobi(triple.g, "jacobi of g"),
        check_jacobi(triple.g_dual, "jacobi of g~"),
    ]
    double = triple.double
    reports.append(check_jacobi(double.values, "jacobi of the double"))
    reports.append(check_pairing_invariance(double))
    return reports
