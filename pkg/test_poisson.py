# test_poisson.py
import numpy as np
import pytest

from maninsigma import catalog
from maninsigma.errors import ChartBreakdown, InputError, ShapeError
from maninsigma.lie_core import ManinTriple, structure_from_brackets
from maninsigma.poisson import (
    bivector_at,
    bivector_closed_form_4d,
    coordinate_bivector_at,
    fit_linearization_sign,
    jacobi_residual,
    jacobi_residual_of,
    linearize,
    multiplicativity_residual,
    partial_bivector,
)


def _general4(c1, c2, f1, f2):
    return ManinTriple(
        structure_from_brackets(2, [(1, 2, 1, c1), (1, 2, 2, c2)]),
        structure_from_brackets(2, [(1, 2, 1, f1), (1, 2, 2, f2)]),
        "general4",
    )


def _random_constant_sets():
    rng = np.random.default_rng(42)
    sets = [tuple(rng.uniform(-1.0, 1.0, 4)) for _ in range(7)]
    sets.append((0.0, 0.8, 0.3, -0.6))   # c12_1 = 0
    sets.append((0.5, 0.0, 0.3, -0.6))   # c12_2 = 0
    sets.append((0.0, 0.0, 0.3, -0.6))   # both zero
    return sets


def test_abelian_bivector_vanishes(points):
    triple = catalog.get("abelian4").triple
    for x in points(2, count=5, radius=5.0):
        assert not np.any(bivector_at(triple, x).matrix)


def test_sl2_dual_published_value(sl2_dual):
    p = bivector_at(sl2_dual, [0.0, 1.0, 1.0])
    assert p.entry(1, 2) == pytest.approx(-0.5, abs=1e-12)
    assert p.entry(1, 3) == pytest.approx(-0.25, abs=1e-12)
    assert p.entry(2, 3) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("x2", [-1.0, 0.3, 2.0])
def test_semi_abelian_bivector(x2):
    p = bivector_at(catalog.get("semi_abelian4").triple, [0.7, x2])
    assert p.entry(2, 1) == pytest.approx(x2, abs=1e-14)
    assert p.entry(1, 2) == pytest.approx(-x2, abs=1e-14)


def test_bivector_rejects_wrong_dimension(sl2_dual):
    with pytest.raises(ShapeError):
        bivector_at(sl2_dual, [0.1, 0.2])


def test_bivector_rejects_unknown_frame(sl2_dual):
    with pytest.raises(InputError):
        bivector_at(sl2_dual, [0.1, 0.2, 0.3], frame="left")


@pytest.mark.parametrize("c1,c2,f1,f2", _random_constant_sets())
def test_closed_form_matches_pipeline_4d(c1, c2, f1, f2, points):
    triple = _general4(c1, c2, f1, f2)
    for x in points(2, count=25, seed=13):
        np.testing.assert_allclose(
            bivector_at(triple, x).matrix, bivector_closed_form_4d(c1, c2, f1, f2, x), atol=1e-8
        )


@pytest.mark.parametrize("name", ["abelian4", "semi_abelian4", "typeA4", "typeB4"])
def test_catalog_4d_entries_match_closed_form(name, points):
    entry = catalog.get(name)
    for x in points(2, count=20):
        np.testing.assert_allclose(bivector_at(entry.triple, x).matrix, entry.reference(x), atol=1e-8)


def test_type_a_closed_form():
    beta, x1, x2 = 2.0, 0.1, 0.2
    p = bivector_closed_form_4d(0.0, 1.0, 0.0, beta, [x1, x2])
    assert p[1, 0] == pytest.approx(beta * x2 * np.exp(x1), rel=1e-12)


def test_type_b_closed_form():
    p = bivector_closed_form_4d(0.0, 1.0, 1.0, 0.0, [0.3, -0.4])
    assert p[1, 0] == pytest.approx(np.expm1(0.3), rel=1e-12)


def test_closed_form_continuous_at_degenerate_threshold():
    x = [0.35, -0.25]
    above = bivector_closed_form_4d(1.0001e-6, 1.0001e-6, 0.7, -0.4, x)
    below = bivector_closed_form_4d(0.9999e-6, 0.9999e-6, 0.7, -0.4, x)
    np.testing.assert_allclose(above, below, rtol=1e-9, atol=1e-15)


def test_k_slice_zero_coefficient_sl2_dual(sl2_dual):
    # dA_2 carries -e^{2 X_1}/4 A_1^A_2
    dp = partial_bivector(sl2_dual, [0.3, 0.5, 0.2], k=1, convention="k-slice-zero")
    assert dp[0, 1] == pytest.approx(-np.exp(0.6) / 4.0, abs=1e-8)


def test_conventions_coincide_at_origin(entry):
    zero = np.zeros(entry.triple.dim)
    for k in range(entry.triple.dim):
        np.testing.assert_array_equal(
            partial_bivector(entry.triple, zero, k, "at-point"),
            partial_bivector(entry.triple, zero, k, "k-slice-zero"),
        )


def test_partial_rejects_unknown_convention(sl2_dual):
    with pytest.raises(InputError):
        partial_bivector(sl2_dual, [0.0, 0.0, 0.0], 0, convention="midpoint")


def test_partial_derivative_is_second_order(sl2_dual):
    x, y, z = 0.1, 0.3, 0.2
    exact = -(y / 2.0) * (1.0 + y * z) * np.exp(2.0 * x)
    err = [abs(partial_bivector(sl2_dual, [x, y, z], 0, h=h)[0, 1] - exact) for h in (0.02, 0.01)]
    assert 3.5 <= err[0] / err[1] <= 4.5


def test_coordinate_bivector_sl2_dual(sl2_dual, points):
    for x1, x2, x3 in points(3):
        p = coordinate_bivector_at(sl2_dual, [x1, x2, x3]).matrix
        expected = np.array([
            [0.0, -x2 / 4.0, -x3 / 4.0],
            [x2 / 4.0, 0.0, x2 * x3 / 2.0],
            [x3 / 4.0, -x2 * x3 / 2.0, 0.0],
        ])
        np.testing.assert_allclose(p, expected, atol=1e-10)


def test_jacobi_holds_in_coordinates(entry3, points):
    worst = max(jacobi_residual(entry3.triple, x) for x in points(3, count=100))
    assert worst < 1e-6


def test_invariant_frame_components_are_not_a_coordinate_bivector(sl2_dual):
    residual = jacobi_residual_of(lambda x: bivector_at(sl2_dual, x).matrix, [0.0, 1.0, 1.0])
    assert residual == pytest.approx(0.375, rel=1e-6)


def test_jacobi_negative_control(sl2_dual):
    def corrupted(x):
        p = coordinate_bivector_at(sl2_dual, x).matrix.copy()
        p[0, 1] += 0.1 * x[0]
        p[1, 0] -= 0.1 * x[0]
        return p

    residual = jacobi_residual_of(corrupted, [0.2, 0.3, 0.5])
    assert residual > 1e-3
    assert residual == pytest.approx(0.0175, rel=1e-6)


def test_jacobi_trivial_in_two_dimensions():
    assert jacobi_residual(catalog.get("typeB4").triple, [0.3, 0.4]) == 0.0


def test_multiplicativity(entry, points):
    n = entry.triple.dim
    for x in points(n, count=10):
        for split in range(1, n):
            assert multiplicativity_residual(entry.triple, x, split) <= 1e-10


def test_bivector_vanishes_at_origin_and_is_antisymmetric(entry, points):
    n = entry.triple.dim
    assert not np.any(bivector_at(entry.triple, np.zeros(n)).matrix)
    for x in points(n):
        for frame in ("invariant", "coordinate"):
            p = bivector_at(entry.triple, x, frame).matrix
            assert np.abs(p + p.T).max() <= 1e-10


def test_linearization_of_abelian_is_zero():
    assert not np.any(linearize(catalog.get("abelian4").triple).values)


@pytest.mark.parametrize("c1,c2,f1,f2", _random_constant_sets())
def test_linearization_4d(c1, c2, f1, f2):
    lin = linearize(_general4(c1, c2, f1, f2)).values
    assert lin[0, 1, 0] == pytest.approx(f1, abs=1e-6)
    assert lin[1, 1, 0] == pytest.approx(f2, abs=1e-6)


def test_linearization_sign_is_uniform_across_catalog(entry):
    sign, err = fit_linearization_sign(linearize(entry.triple), entry.triple.f)
    assert sign == -1
    assert err <= 1e-6


def test_linearization_sign_none_when_nothing_fits():
    lin = linearize(catalog.get("sl2_dual").triple)
    sign, err = fit_linearization_sign(lin, np.ones((3, 3, 3)))
    assert sign is None and err > 1e-6


def test_chart_breakdown_of_coordinate_frame():
    su2 = catalog.get("su2_sb2").triple
    with pytest.raises(ChartBreakdown, match="det dg g"):
        coordinate_bivector_at(su2, [0.0, np.pi / 2.0, 0.0])
    # the invariant-frame components stay regular there
    assert np.all(np.isfinite(bivector_at(su2, [0.0, np.pi / 2.0, 0.0]).matrix))


def test_closed_form_needs_two_coordinates():
    with pytest.raises(ShapeError):
        bivector_closed_form_4d(0.0, 1.0, 1.0, 0.0, [0.1, 0.2, 0.3])
