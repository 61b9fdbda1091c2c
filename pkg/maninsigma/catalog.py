# maninsigma/catalog.py
"""
Named Manin triples with their published bivector forms.

Entries:
 - abelian4, semi_abelian4, typeA4 (beta != 0), typeB4      n = 2
 - sl2_dual, dual_sl2, su2_sb2, sb2_su2                      n = 3

Reference forms are in the invariant frame (b a^-1). The numeric pipeline is
authoritative; disagreements are returned as Discrepancy records, never raised.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from .adjoint import as_point
from .errors import CatalogError
from .lie_core import ManinTriple, structure_from_brackets
from .poisson import bivector_at, bivector_closed_form_4d
from .report import Discrepancy


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    title: str
    triple: ManinTriple
    reference: Optional[Callable[[np.ndarray], np.ndarray]] = None
    params: Dict[str, float] = field(default_factory=dict)
    notes: Tuple[str, ...] = ()


def _antisym3(p12, p13, p23):
    return np.array([
        [0.0, p12, p13],
        [-p12, 0.0, p23],
        [-p13, -p23, 0.0],
    ])


def _closed_form(c12_1, c12_2, f12_1, f12_2):
    return lambda x: bivector_closed_form_4d(c12_1, c12_2, f12_1, f12_2, x)


def _sl2_dual_form(x):
    x1, x2, x3 = x
    return _antisym3(
        -(x2 / 4.0) * (1.0 + x2 * x3) * np.exp(2.0 * x1),
        -(x3 / 4.0) * np.exp(-2.0 * x1),
        x2 * x3 / 2.0,
    )


def _dual_sl2_form(x):
    x1, x2, x3 = x
    return _antisym3(
        -2.0 * np.exp(x1 / 4.0) * x2,
        2.0 * np.exp(x1 / 4.0) * x3,
        2.0 - 0.5 * np.exp(x1 / 2.0) * (4.0 + x2 * x3),
    )


def _su2_sb2_form(x):
    x1, x2, x3 = x
    return _antisym3(
        -np.cos(x1) * np.cos(x3) * np.sin(x2) + np.sin(x1) * np.sin(x3),
        -np.cos(x3) * np.sin(x1) * np.sin(x2) - np.cos(x1) * np.sin(x3),
        -1.0 + np.cos(x2) * np.cos(x3),
    )


def _sb2_su2_form(x):
    x1, x2, x3 = x
    return _antisym3(
        -np.exp(x1) * x3,
        -np.exp(x1) * x2,
        0.5 * (1.0 - np.exp(2.0 * x1) * (1.0 + x2 * x2 + x3 * x3)),
    )


def _triple(name, n, c_entries, f_entries):
    return ManinTriple(
        structure_from_brackets(n, c_entries, source=name),
        structure_from_brackets(n, f_entries, source=name),
        name=name,
    )


SL2 = [(1, 2, 2, 2.0), (1, 3, 3, -2.0), (2, 3, 1, 1.0)]
SL2_STAR = [(1, 2, 2, 0.25), (1, 3, 3, 0.25)]
SU2 = [(1, 2, 3, 1.0), (2, 3, 1, 1.0), (3, 1, 2, 1.0)]
SB2 = [(1, 2, 2, 1.0), (1, 3, 3, 1.0)]


def _build(name, beta=None):
    if name == "abelian4":
        return CatalogEntry(
            name, "(A4, 2A1, 2A1) abelian",
            _triple(name, 2, [], []),
            reference=_closed_form(0.0, 0.0, 0.0, 0.0),
        )
    if name == "semi_abelian4":
        return CatalogEntry(
            name, "semi-abelian: [T~^1,T~^2] = T~^2, g abelian",
            _triple(name, 2, [], [(1, 2, 2, 1.0)]),
            reference=_closed_form(0.0, 0.0, 0.0, 1.0),
        )
    if name == "typeA4":
        beta = 1.0 if beta is None else float(beta)
        if beta == 0.0:
            raise CatalogError("typeA4 requires beta != 0 (beta = 0 is the semi-abelian family)")
        return CatalogEntry(
            name, f"type A: [T_1,T_2] = T_2, [T~^1,T~^2] = {beta:g} T~^2",
            _triple(name, 2, [(1, 2, 2, 1.0)], [(1, 2, 2, beta)]),
            reference=_closed_form(0.0, 1.0, 0.0, beta),
            params={"beta": beta},
        )
    if name == "typeB4":
        return CatalogEntry(
            name, "type B: [T_1,T_2] = T_2, [T~^1,T~^2] = T~^1",
            _triple(name, 2, [(1, 2, 2, 1.0)], [(1, 2, 1, 1.0)]),
            reference=_closed_form(0.0, 1.0, 1.0, 0.0),
        )
    if name == "sl2_dual":
        return CatalogEntry(name, "(sl(2) + sl(2)*, sl(2), sl(2)*)", _triple(name, 3, SL2, SL2_STAR), _sl2_dual_form)
    if name == "dual_sl2":
        return CatalogEntry(name, "(sl(2) + sl(2)*, sl(2)*, sl(2))", _triple(name, 3, SL2_STAR, SL2), _dual_sl2_form)
    if name == "su2_sb2":
        return CatalogEntry(
            name, "(sl(2,C), su(2), sb(2,C))", _triple(name, 3, SU2, SB2), _su2_sb2_form,
            notes=("published (3,1) entry cos X3 sin X1 sin X3 + cos X1 sin X3 replaced by -P^13",),
        )
    if name == "sb2_su2":
        return CatalogEntry(
            name, "(sl(2,C), sb(2,C), su(2))", _triple(name, 3, SB2, SU2), _sb2_su2_form,
            notes=("published action carries 1 + 2X2^2 + 2X3^2 in the A2^A3 term; the matrix form is stored",),
        )
    raise CatalogError(f"unknown catalog entry {name!r}; known: {', '.join(names())}")


def names():
    return ("abelian4", "semi_abelian4", "typeA4", "typeB4", "sl2_dual", "dual_sl2", "su2_sb2", "sb2_su2")


def get(name, beta=None):
    if beta is not None and name != "typeA4":
        raise CatalogError(f"--beta only applies to typeA4, not {name!r}")
    return _build(name, beta)


def reference_bivector(name, p, beta=None):
    entry = get(name, beta)
    x = as_point(p).coords
    if x.shape[0] != entry.triple.dim:
        raise CatalogError(f"{name} takes {entry.triple.dim} coordinates, got {x.shape[0]}")
    return np.asarray(entry.reference(x), dtype=float)


def _bracket_terms(coeffs, labels):
    terms = []
    for k, v in enumerate(coeffs):
        if v != 0.0:
            terms.append(f"{v:+g} {labels[k]}")
    return " ".join(terms)


def bracket_lines(triple: ManinTriple):
    """Nonzero brackets of the double, i < j, in T / T~ notation."""
    n = triple.dim
    labels = [f"T_{i + 1}" for i in range(n)] + [f"T~^{i + 1}" for i in range(n)]
    d = triple.double.d
    lines = []
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            if np.any(d[i, j] != 0.0):
                lines.append(f"[{labels[i]}, {labels[j]}] = {_bracket_terms(d[i, j], labels)}")
    return lines


def compare_reference(entry: CatalogEntry, points, tol):
    """Discrepancy records for every (point, i<j) where |published - numeric| > tol."""
    if entry.reference is None:
        return []
    records = []
    n = entry.triple.dim
    for p in points:
        x = as_point(p)
        numeric = bivector_at(entry.triple, x).matrix
        published = np.asarray(entry.reference(x.coords), dtype=float)
        for i in range(n):
            for j in range(i + 1, n):
                if abs(published[i, j] - numeric[i, j]) > tol:
                    records.append(Discrepancy(
                        entry=entry.name, i=i + 1, j=j + 1, point=x.as_tuple(),
                        published=float(published[i, j]), computed=float(numeric[i, j]),
                    ))
    return records

