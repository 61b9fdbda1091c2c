# test_sigma_model.py
import numpy as np
import pytest

from maninsigma import catalog
from maninsigma.errors import ShapeError
from maninsigma.sigma_model import (
    FieldConfig,
    WorldsheetGrid,
    action_S2,
    action_coefficients,
    convergence_rates,
    eom_coefficients,
    eom_residuals,
    exterior_derivative,
    fields_from_dict,
    fields_to_dict,
    manufactured_convergence,
    manufactured_semi_abelian,
    random_fields,
    zero_fields,
)


@pytest.fixture
def semi_abelian():
    return catalog.get("semi_abelian4").triple


def _linear_config(grid):
    """X_2 = xi_1, A_1 = d xi_1, A_2 = d xi_2."""
    xi1, _ = grid.coordinates()
    x = np.zeros((grid.n1, grid.n2, 2))
    x[..., 1] = xi1
    a = np.zeros((grid.n1, grid.n2, 2, 2))
    a[..., 0, 0] = 1.0
    a[..., 1, 1] = 1.0
    return FieldConfig(x, a)


def test_grid_rejects_degenerate_shapes():
    with pytest.raises(ShapeError):
        WorldsheetGrid(1, 4, 0.1, 0.1)
    with pytest.raises(ShapeError):
        WorldsheetGrid(4, 4, 0.0, 0.1)


def test_field_shapes_are_checked(semi_abelian):
    grid = WorldsheetGrid(4, 4, 0.1, 0.1)
    with pytest.raises(ShapeError):
        FieldConfig(np.zeros((4, 4, 2)), np.zeros((4, 4, 2)))
    with pytest.raises(ShapeError):
        zero_fields(grid, 3).check(semi_abelian, grid)
    with pytest.raises(ShapeError):
        zero_fields(WorldsheetGrid(5, 4, 0.1, 0.1), 2).check(semi_abelian, grid)


def test_zero_fields_have_zero_action(entry):
    grid = WorldsheetGrid(5, 4, 0.1, 0.2)
    assert action_S2(entry.triple, grid, zero_fields(grid, entry.triple.dim)) == 0.0


@pytest.mark.parametrize("n1,n2,h", [(5, 5, 0.1), (9, 4, 0.05)])
def test_action_of_linear_configuration_is_exact(semi_abelian, n1, n2, h):
    grid = WorldsheetGrid(n1, n2, h, h)
    l1, l2 = (n1 - 1) * h, (n2 - 1) * h
    assert action_S2(semi_abelian, grid, _linear_config(grid)) == pytest.approx(l2 * (l1 + l1 ** 2 / 2.0), rel=1e-12)


def test_action_is_additive_over_adjacent_regions(sl2_dual):
    grid = WorldsheetGrid(9, 6, 0.07, 0.05)
    fields = random_fields(grid, 3, seed=3)
    left = WorldsheetGrid(5, 6, 0.07, 0.05)
    right = WorldsheetGrid(5, 6, 0.07, 0.05)
    s_left = action_S2(sl2_dual, left, FieldConfig(fields.X[:5], fields.A[:5]))
    s_right = action_S2(sl2_dual, right, FieldConfig(fields.X[4:], fields.A[4:]))
    assert action_S2(sl2_dual, grid, fields) == pytest.approx(s_left + s_right, rel=1e-12, abs=1e-14)


def test_exterior_derivative_of_rotation_form():
    grid = WorldsheetGrid(6, 5, 0.1, 0.2)
    xi1, xi2 = grid.coordinates()
    a = np.zeros((6, 5, 1, 2))
    a[..., 0, 0] = -xi2
    a[..., 0, 1] = xi1
    np.testing.assert_allclose(exterior_derivative(grid, a), 2.0, rtol=1e-12)


def test_exterior_derivative_obeys_stokes():
    grid = WorldsheetGrid(7, 5, 0.1, 0.15)
    a = random_fields(grid, 2, seed=11).A
    interior = exterior_derivative(grid, a).sum(axis=(0, 1)) * grid.h1 * grid.h2

    def edge(values, h):
        return 0.5 * (values[:-1] + values[1:]).sum(axis=0) * h

    boundary = (
        edge(a[:, 0, :, 0], grid.h1)
        + edge(a[-1, :, :, 1], grid.h2)
        - edge(a[:, -1, :, 0], grid.h1)
        - edge(a[0, :, :, 1], grid.h2)
    )
    np.testing.assert_allclose(interior, boundary, atol=1e-13)


def test_manufactured_solution_has_zero_action(semi_abelian):
    grid = WorldsheetGrid(8, 8, 0.5 / 8, 0.5 / 8)
    assert action_S2(semi_abelian, grid, manufactured_semi_abelian(grid)) == pytest.approx(0.0, abs=1e-15)


def test_manufactured_solution_converges_at_second_order(semi_abelian):
    rows = manufactured_convergence(semi_abelian, sizes=(16, 32, 64), extent=0.5)
    assert [r["n"] for r in rows] == [16, 32, 64]
    for row in rows[1:]:
        assert 3.5 <= row["ratio"] <= 4.5
        assert row["rate"] >= 1.8
    assert rows[-1]["max_residual"] < 1e-4


def test_random_fields_are_not_solutions(sl2_dual):
    grid = WorldsheetGrid(5, 5, 0.1, 0.1)
    res = eom_residuals(sl2_dual, grid, random_fields(grid, 3, seed=5))
    assert res.max_norm > 1e-3
    assert res.r1.shape == (3, 3, 3, 2) and res.r2.shape == (4, 4, 3)


def test_random_fields_are_reproducible():
    grid = WorldsheetGrid(4, 3, 0.1, 0.1)
    a, b = random_fields(grid, 2, seed=9), random_fields(grid, 2, seed=9)
    np.testing.assert_array_equal(a.X, b.X)
    np.testing.assert_array_equal(a.A, b.A)
    assert np.abs(a.X).max() <= 0.4


def test_eom_needs_interior_sites(semi_abelian):
    grid = WorldsheetGrid(2, 5, 0.1, 0.1)
    with pytest.raises(ShapeError):
        eom_residuals(semi_abelian, grid, zero_fields(grid, 2))


def test_eom_coefficients_sl2_dual_k_slice_zero(sl2_dual):
    c = eom_coefficients(sl2_dual, [0.3, 0.5, 0.2], convention="k-slice-zero")
    assert c[1, 0, 1] == pytest.approx(-np.exp(0.6) / 4.0, abs=1e-8)
    np.testing.assert_allclose(c, -c.transpose(0, 2, 1), atol=1e-15)


def test_eom_coefficients_type_a():
    triple = catalog.get("typeA4", beta=2.0).triple
    c = eom_coefficients(triple, [0.3, 0.2])
    assert c[1, 0, 1] == pytest.approx(-2.0 * np.exp(0.3), abs=1e-8)


def test_eom_conventions_agree_at_origin(entry):
    zero = np.zeros(entry.triple.dim)
    np.testing.assert_array_equal(
        eom_coefficients(entry.triple, zero, "at-point"),
        eom_coefficients(entry.triple, zero, "k-slice-zero"),
    )


def test_action_coefficients_are_minus_p(sl2_dual):
    coeffs = action_coefficients(sl2_dual, [0.0, 1.0, 1.0])
    assert list(coeffs) == [(1, 2), (1, 3), (2, 3)]
    assert coeffs[(1, 2)] == pytest.approx(0.5, abs=1e-12)
    assert coeffs[(1, 3)] == pytest.approx(0.25, abs=1e-12)
    assert coeffs[(2, 3)] == pytest.approx(-0.5, abs=1e-12)


def test_convergence_rates():
    rates = convergence_rates([0.1, 0.05, 0.025], [4e-2, 1e-2, 0.0])
    assert rates[0] == pytest.approx(2.0)
    assert np.isnan(rates[1])


def test_field_dict_preserves_layout():
    grid = WorldsheetGrid(3, 4, 0.1, 0.2)
    fields = random_fields(grid, 2, seed=1)
    doc = fields_to_dict(grid, fields)
    assert len(doc["X"]) == 12 and doc["grid"] == {"n1": 3, "n2": 4, "h1": 0.1, "h2": 0.2}
    grid2, fields2 = fields_from_dict(doc)
    assert grid2 == grid
    np.testing.assert_array_equal(fields2.A, fields.A)


@pytest.mark.parametrize("doc", [{}, {"grid": {"n1": 2, "n2": 2, "h1": 0.1, "h2": 0.1}, "X": [[0.0]], "A": []}])
def test_malformed_field_dict(doc):
    with pytest.raises(ShapeError):
        fields_from_dict(doc)
