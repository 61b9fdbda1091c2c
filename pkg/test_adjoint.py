# test_adjoint.py
import numpy as np
import pytest

from maninsigma import catalog
from maninsigma.adjoint import (
    Ad_of_inverse_point,
    Ad_of_point,
    ad_matrix,
    blocks_from_forward,
    extract_blocks,
    lower_left_defect,
    pairing_defect,
    right_invariant_frame,
)
from maninsigma.errors import EvaluationError, ShapeError
from maninsigma.lie_core import ManinTriple, structure_from_brackets
from maninsigma.matrix_num import det, mat_exp


def _general4(c1, c2, f1, f2):
    return ManinTriple(
        structure_from_brackets(2, [(1, 2, 1, c1), (1, 2, 2, c2)]),
        structure_from_brackets(2, [(1, 2, 1, f1), (1, 2, 2, f2)]),
        "general4",
    )


def test_sl2_dual_ad_matrices_match_published_displays(sl2_dual):
    d = sl2_dual.double
    np.testing.assert_array_equal(ad_matrix(d, 0), np.diag([0.0, 2.0, -2.0, 0.0, -2.0, 2.0]))
    ad2 = np.array([
        [0, 0, 4, 0, -1, 0],
        [-8, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 8, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, -4, 0, 0],
    ]) / 4.0
    ad3 = np.array([
        [0, -4, 0, 0, 0, -1],
        [0, 0, 0, 0, 0, 0],
        [8, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, -8],
        [0, 0, 0, 4, 0, 0],
        [0, 0, 0, 0, 0, 0],
    ]) / 4.0
    np.testing.assert_array_equal(ad_matrix(d, 1), ad2)
    np.testing.assert_array_equal(ad_matrix(d, 2), ad3)


def test_general4_ad_matrices_match_published_displays():
    c1, c2, f1, f2 = 0.3, 0.7, 0.5, -0.2
    d = _general4(c1, c2, f1, f2).double
    np.testing.assert_allclose(ad_matrix(d, 0), [
        [0, c1, 0, -f1],
        [0, c2, f1, 0],
        [0, 0, 0, 0],
        [0, 0, -c1, -c2],
    ])
    np.testing.assert_allclose(ad_matrix(d, 1), [
        [-c1, 0, 0, -f2],
        [-c2, 0, f2, 0],
        [0, 0, c1, c2],
        [0, 0, 0, 0],
    ])


def test_abelian_ad_matrices_vanish():
    d = catalog.get("abelian4").triple.double
    for i in range(4):
        assert not np.any(ad_matrix(d, i))


def test_ad_index_out_of_range(sl2_dual):
    with pytest.raises(ShapeError):
        ad_matrix(sl2_dual.double, 6)


def test_Ad_at_origin_is_identity(entry):
    d = entry.triple.double
    zero = np.zeros(entry.triple.dim)
    np.testing.assert_array_equal(Ad_of_point(d, zero), np.eye(d.dim))
    np.testing.assert_array_equal(Ad_of_inverse_point(d, zero), np.eye(d.dim))


def test_semi_abelian_single_factor():
    d = catalog.get("semi_abelian4").triple.double
    np.testing.assert_allclose(Ad_of_point(d, [0.0, 0.8]), mat_exp(0.8 * ad_matrix(d, 1)), atol=1e-15)


def test_inverse_uses_reversed_order():
    d = _general4(0.3, 0.7, 0.5, -0.2).double
    x = [0.4, -0.3]
    expected = mat_exp(-x[1] * ad_matrix(d, 1)) @ mat_exp(-x[0] * ad_matrix(d, 0))
    np.testing.assert_allclose(Ad_of_inverse_point(d, x), expected, atol=1e-14)


def test_det_of_Ad_matches_trace_formula(entry, points):
    d = entry.triple.double
    traces = np.array([np.trace(ad_matrix(d, i)) for i in range(entry.triple.dim)])
    for x in points(entry.triple.dim, count=10):
        assert det(Ad_of_point(d, x)) == pytest.approx(np.exp(traces @ x), rel=1e-8)


def test_forward_and_inverse_multiply_to_identity(entry, points):
    d = entry.triple.double
    for x in points(entry.triple.dim, radius=0.5):
        np.testing.assert_allclose(Ad_of_point(d, x) @ Ad_of_inverse_point(d, x), np.eye(d.dim), atol=1e-10)


def test_adjoint_is_block_triangular_and_preserves_pairing(entry, points):
    d = entry.triple.double
    for x in points(entry.triple.dim):
        for adj in (Ad_of_point(d, x), Ad_of_inverse_point(d, x)):
            assert lower_left_defect(adj) <= 1e-10
            assert pairing_defect(d, adj) <= 1e-9


def test_blocks_agree_between_forward_and_inverse(entry, points):
    d = entry.triple.double
    for x in points(entry.triple.dim):
        inv = extract_blocks(Ad_of_inverse_point(d, x))
        fwd = blocks_from_forward(Ad_of_point(d, x))
        np.testing.assert_allclose(fwd.a, inv.a, atol=1e-9)
        np.testing.assert_allclose(fwd.b, inv.b, atol=1e-9)
        np.testing.assert_allclose(fwd.d, inv.d, atol=1e-9)
        # pairing preservation forces d = a^-T
        np.testing.assert_allclose(inv.d @ inv.a.T, np.eye(entry.triple.dim), atol=1e-9)


def test_extract_blocks_of_identity():
    blocks = extract_blocks(np.eye(6))
    np.testing.assert_array_equal(blocks.a, np.eye(3))
    np.testing.assert_array_equal(blocks.b, np.zeros((3, 3)))
    np.testing.assert_array_equal(blocks.d, np.eye(3))


def test_extract_blocks_semi_abelian():
    d = catalog.get("semi_abelian4").triple.double
    blocks = extract_blocks(Ad_of_inverse_point(d, [0.0, 0.6]))
    np.testing.assert_allclose(blocks.a, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(blocks.b, [[0.0, -0.6], [0.6, 0.0]], atol=1e-15)


def test_extract_blocks_rejects_lower_left_entries():
    m = np.eye(4)
    m[3, 0] = 1e-3
    with pytest.raises(EvaluationError, match="triangular"):
        extract_blocks(m)


def test_extract_blocks_rejects_odd_size():
    with pytest.raises(ShapeError):
        extract_blocks(np.eye(3))


def test_right_invariant_frame_is_trivial_for_abelian_group(points):
    d = catalog.get("semi_abelian4").triple.double
    for x in points(2, count=5):
        np.testing.assert_allclose(right_invariant_frame(d, x), np.eye(2), atol=1e-15)


def test_right_invariant_frame_at_origin(entry3):
    d = entry3.triple.double
    np.testing.assert_array_equal(right_invariant_frame(d, np.zeros(3)), np.eye(3))
