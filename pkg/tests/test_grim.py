import pytest

from artifact.errors import IncompatibleAction, UnsupportedAction
from artifact.grim import (
    Flip, GAction, PointKind, beta_affine, beta_curve_zero, beta_cusp_fiber,
    beta_definite_fiber, beta_diagonal_zero, beta_level_set, beta_point, beta_sphere, beta_Y,
    beta_Y_fiber, beta_Y_punctured, make_residual, residual_atom,
)
from artifact.qring import ONE, ZERO, U, AtomTemplate, AtomVariant, SeriesValue

PT = U / (U - 1)
C1, C2, C3, C4 = GAction.CASE1, GAction.CASE2, GAction.CASE3, GAction.CASE4


def test_points():
    assert beta_point(PointKind.ONE_FIXED) == PT
    assert beta_point(PointKind.TWO_FIXED) == 2 * PT
    assert beta_point(PointKind.TWO_SWAPPED) == ONE


@pytest.mark.parametrize("d, expected", [(0, PT), (2, U**3 / (U - 1)), (5, U**6 / (U - 1))])
def test_affine(d, expected):
    assert beta_affine(d) == expected


def test_spheres():
    assert beta_sphere(1, False) == 1 + U
    assert beta_sphere(1, True) == (U**2 + U) / (U - 1)
    assert beta_sphere(0, True) == 2 * PT


@pytest.mark.parametrize("p, q, action, expected", [
    (1, 1, C1, (U**2 - U + 1) / (U - 1)),
    (1, 1, C4, (2 * U**2 - U) / (U - 1)),
    (1, 2, C1, (U**3 - U**2 + 1) / (U - 1)),
    (0, 3, C2, PT),
    (0, 0, C4, PT),
])
def test_cone_values(p, q, action, expected):
    assert beta_Y((p, q), action) == expected


def test_cone_symmetry_swaps_cases():
    for p in range(4):
        for q in range(4):
            for a in (C1, C2, C3, C4):
                try:
                    v = beta_Y((p, q), a)
                except IncompatibleAction:
                    continue
                assert v == beta_Y((q, p), a.swapped())


def test_impossible_action():
    with pytest.raises(IncompatibleAction):
        beta_Y((0, 2), C1)


def test_punctured():
    assert beta_Y_punctured((1, 1), C4) == 2 * U
    assert beta_Y_punctured((1, 1), C1) == U - 1
    assert beta_Y_punctured((0, 4), C4) == ZERO


@pytest.mark.parametrize("p, q, xi, action, expected", [
    (1, 0, 1, C4, 2 * PT),
    (1, 0, 1, C1, ONE),
    (2, 0, 1, C4, beta_sphere(1, True)),
    (0, 2, 1, C4, ZERO),
    (1, 1, 1, C1, U),
    (1, 1, 1, C2, (U**2 + 1) / (U - 1)),
])
def test_level_sets_of_quadrics(p, q, xi, action, expected):
    assert beta_Y_fiber((p, q), xi, action) == expected


def test_hyperbola_is_not_two_lines():
    # the flipped hyperbola would be 2u^2/(u-1) if its branches were lines
    assert beta_Y_fiber((1, 1), 1, C2) != 2 * U**2 / (U - 1)


def test_flip_all_fibers_unsupported():
    with pytest.raises(UnsupportedAction):
        beta_Y_fiber((1, 1), 1, C3)


def test_diagonal_zero():
    assert beta_diagonal_zero(4, (0, 0), 1, Flip.NONE) == PT
    assert beta_diagonal_zero(3, (1, 0), -1, Flip.NONE) == U**2 / (U - 1)
    assert beta_diagonal_zero(2, (1, 0), -1, C1) == (U**2 - U + 1) / (U - 1)


def test_diagonal_zero_odd_power_of_flipped_variable():
    with pytest.raises(IncompatibleAction):
        beta_diagonal_zero(3, (1, 1), 1, Flip.POWER)


def test_curve_zero():
    assert beta_curve_zero(1, 1, True) == U**2 / (U - 1)
    assert beta_curve_zero(2, 1, False) == U**2 / (U - 1)
    assert beta_curve_zero(1, -1, False) == (3 * U**2 - 2 * U) / (U - 1)
    assert beta_curve_zero(1, -1, True) == (2 * U**2 - 2 * U + 1) / (U - 1)


@pytest.mark.parametrize("l, xi, flip", [(2, 1, True), (1, -1, False), (3, 1, False)])
def test_cusp_fiber(l, xi, flip):
    assert beta_cusp_fiber(l, xi, flip) == U**2 / (U - 1)


def test_definite_fiber():
    assert beta_definite_fiber(4, 3, 1, -1) == ZERO
    assert beta_definite_fiber(4, 2, 1, 1) == 2 * PT + U + U**2
    assert beta_definite_fiber(6, 1, -1, -1) == 2 * PT + U


def test_make_residual():
    v = make_residual(AtomTemplate.EVEN_MIXED, 4, 3, 1, AtomVariant.FLIP_INSIDE_SQUARES)
    assert v.rat.is_zero() and len(v.atoms) == 1
    assert v == make_residual(AtomTemplate.EVEN_MIXED, 4, 3, 1, AtomVariant.FLIP_INSIDE_SQUARES)
    assert v != make_residual(AtomTemplate.EVEN_MIXED, 4, 3, 1, AtomVariant.FLIP_ON_POWER_VARIABLE)


def test_residual_atom_normalization():
    # {+x^4 + Q_{0,3} = xi} is {-x^4 + Q_{3,0} = -xi}
    a = residual_atom(AtomTemplate.EVEN_MIXED, 4, 1, 0, 3, 1, Flip.MINUS_SQUARE)
    b = residual_atom(AtomTemplate.EVEN_MIXED, 4, -1, 3, 0, -1, Flip.PLUS_SQUARE)
    assert a == b
    assert residual_atom(AtomTemplate.EVEN_MIXED, 4, 1, 3, 0, 1, Flip.NONE) is None


def test_level_set_mixed_residual():
    v = beta_level_set(4, 3, 1, -1, 1, Flip.PLUS_SQUARE)
    (a, _), = v.atoms
    assert (a.template, a.K, a.opposite, a.variant) == (
        AtomTemplate.EVEN_MIXED, 2, 0, AtomVariant.FLIP_INSIDE_SQUARES)


def test_level_set_definite_and_balanced():
    v = beta_level_set(4, 3, 0, 1, 1, Flip.PLUS_SQUARE)
    assert v == SeriesValue.of(beta_sphere(3, True))
    # p = q with the power variable flipped: two exchanged points remain
    w = beta_level_set(4, 1, 1, 1, 1, Flip.POWER)
    assert w == SeriesValue.of(U**2 + U)
    assert w.is_atom_free()
