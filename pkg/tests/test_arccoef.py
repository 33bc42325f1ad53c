import pytest

from artifact.arccoef import (
    CoeffChannel, CoeffRequest, ab_coeff0, ab_coeffxi, ab_dedicated, ab_generic, beta_germ_fiber,
    cd_coeff0, cd_coeffxi, cd_dedicated, cd_generic, coefficient, ef_coeff0, ef_coeffxi, lift_coeff,
    net_coeff, tail_status, validity_bound, zeta_truncated,
)
from artifact.errors import OutOfRange
from artifact.germs import make_germ, parse_germ
from artifact.grim import GAction, beta_Y, beta_Y_fiber, beta_Y_punctured
from artifact.qring import ZERO, U, AtomTemplate, AtomVariant, Channel, SeriesValue, TailKind, upow

PT = U / (U - 1)


def v(x):
    return SeriesValue.of(x)


def test_degree_two_of_a_germ():
    g = make_germ("A", 4, 1, 1, p=2, q=1)
    assert ab_coeff0(g, 2) == v(U**8 / (U - 1))


def test_b_germ_square_pair():
    g = make_germ("B", 2, 1, p=1, q=1)
    assert ab_coeff0(g, 3) == v(2 * U**7 + U**8 / (U - 1))


@pytest.mark.parametrize("p, q", [(2, 0), (0, 3), (4, 0)])
def test_definite_cone_odd_degree(p, q):
    g = make_germ("A", 4, 1, 1 if p else -1, p=p, q=q)
    assert ab_coeff0(g, 3) == v(upow(4 + 2 * (p + q)) / (U - 1))
    assert ab_coeffxi(g, 3, 1) == v(ZERO)


def test_a1_degree_two_uses_full_quadric():
    g = make_germ("A", 1, 1, 1, p=1, q=1)
    assert ab_coeff0(g, 2) == v(upow(3) * beta_Y((2, 1), GAction.CASE1))


def test_sign_channel_degree_two():
    g = make_germ("A", 4, 1, 1, p=2, q=2)
    assert ab_coeffxi(g, 2, -1) == v(upow(6) * beta_Y_fiber((2, 2), -1, GAction.CASE1))


def test_acted_sign_changes_square_fiber():
    plus = make_germ("A", 4, 1, 1, p=1, q=1)
    minus = make_germ("A", 4, 1, -1, p=1, q=1)
    assert ab_coeffxi(plus, 2, 1) == v(U**4 * U)
    assert ab_coeffxi(minus, 2, 1) == v(U**4 * (U**2 + 1) / (U - 1))


def test_lift_and_net():
    g = parse_germ("x1^2+x2^4+x3^2")
    assert lift_coeff(g, 1) == v(U**4 / (U - 1))
    assert lift_coeff(g, 2) == v(U**7 / (U - 1))
    assert ab_coeff0(g, 2) == v(U**5 / (U - 1))
    assert net_coeff(g, 2) == v(U**5 * (U + 1))
    z = zeta_truncated(g, Channel.NAIVE, 2)
    assert z.coeff(1) == v(ZERO)
    assert z.coeff(2) == v((U + 1) / U)


def test_coefficient_request():
    g = make_germ("D", 6, 1, 1, p=2, q=1)
    assert coefficient(CoeffRequest(g, 3, CoeffChannel.NET)) == net_coeff(g, 3)
    assert coefficient(CoeffRequest(g, 3, CoeffChannel.SIGN, -1)) == cd_coeffxi(g, 3, -1)


def test_a0_is_affine():
    g = make_germ("A", 0, 1, 1, p=1, q=1)
    assert validity_bound(g) is None
    for m in range(1, 8):
        assert ab_coeff0(g, m) == v(upow(m * g.n - m + 1) / (U - 1))
    z = zeta_truncated(g, Channel.PLUS, 3)
    assert z.coeff(2) == v(upow(-1) / (U - 1))


@pytest.mark.parametrize("g, bad", [
    (make_germ("A", 4, 1, 1, p=1), 5),
    (make_germ("A", 5, 1, 1, p=1), 7),
    (make_germ("A", 1, 1, 1, p=1), 3),
    (make_germ("B", 3, 1, p=1), 7),
    (make_germ("C", 5, 1, p=1), 6),
    (make_germ("D", 6, 1, 1, p=1), 6),
    (make_germ("E6", None, 1, 1, p=1), 5),
    (make_germ("E7", None, 1, 1, p=1), 1),
])
def test_out_of_range(g, bad):
    with pytest.raises(OutOfRange):
        ab_coeff0(g, bad) if g.family.value in "AB" else net_coeff(g, bad)


def test_c_d_degree_two():
    for g in (make_germ("D", 5, 1, 1, p=2, q=1), make_germ("C", 4, -1, p=2, q=1)):
        act = GAction.CASE1 if g.acted_sign else GAction.CASE4
        assert cd_coeff0(g, 2) == v(upow(4 + 3) * beta_Y((2, 1), act))


def test_curve_residual_at_degree_three():
    h = parse_germ("x2^2*x3 - x3^3 + x1^2 + x4^2 + x5^2")
    r = parse_germ("x1^2*x2 - x2^3 + x3^2 + x4^2 + x5^2")
    assert cd_coeff0(h, 3) == v(U**10 * (3 * U**2 - 2 * U) / (U - 1))
    assert cd_coeff0(r, 3) == v(U**10 * (2 * U**2 - 2 * U + 1) / (U - 1))


def test_single_square_c_d():
    g = make_germ("D", 8, 1, 1, p=1, q=0)
    for r in (1, 2, 3):
        assert cd_coeff0(g, 2 * r) == v((r - 1) * upow(4 * r + 1) + upow(4 * r + 2) / (U - 1))


def test_e_f_low_degrees():
    g = make_germ("E6", None, 1, 1, p=2, q=1)
    Yp = beta_Y_punctured((2, 1), GAction.CASE1)
    assert ef_coeff0(g, 2) == v(U**7 * beta_Y((2, 1), GAction.CASE1))
    assert ef_coeff0(g, 3) == v(U**11 * Yp + U**12 / (U - 1))
    assert ef_coeffxi(g, 3, 1) == ef_coeff0(g, 3)
    assert ef_coeffxi(g, 1, 1) == v(ZERO)


def test_net_first_coefficient_vanishes():
    for g in (make_germ("A", 3, -1, -1, q=2), make_germ("B", 2, 1, p=3),
              make_germ("C", 3, 1, p=1, q=1), make_germ("D", 4, 1, 1, p=1),
              make_germ("E6", None, -1, 1, p=1), make_germ("F4", None, 1, p=2)):
        assert net_coeff(g, 1) == v(ZERO)


@pytest.mark.parametrize("m", range(1, 11))
def test_generic_formulas_cover_degenerate_signatures(m):
    for a in (GAction.CASE1, GAction.CASE2, GAction.CASE4):
        for xi in (None, 1, -1):
            assert ab_generic(m, 1, 1, a, xi) == ab_dedicated(m, 1, 1, a, xi)
    for p, q, a in ((1, 0, GAction.CASE1), (1, 0, GAction.CASE4), (0, 1, GAction.CASE2)):
        for xi in (None, 1, -1):
            assert cd_generic(m, p, q, a, xi) == cd_dedicated(m, p, q, a, xi)


def test_germ_fiber_mixed_atom():
    g = make_germ("A", 3, -1, 1, p=4, q=1)
    val = beta_germ_fiber(g, 1)
    (atom, _), = val.atoms
    assert atom.template is AtomTemplate.EVEN_MIXED and atom.K == 3
    assert atom.variant is AtomVariant.FLIP_INSIDE_SQUARES


def test_germ_fiber_resolves_when_signs_agree():
    g = make_germ("B", 2, 1, p=3, q=1)
    assert beta_germ_fiber(g, 1).is_atom_free()
    assert beta_germ_fiber(g, -1).is_atom_free()


def test_tails():
    f = make_germ("A", 3, 1, 1, p=3, q=0)
    g = make_germ("B", 2, 1, p=3, q=0)
    assert tail_status(f, g, Channel.NAIVE).kind is TailKind.EQUAL
    assert tail_status(f, None, Channel.NAIVE).kind is TailKind.UNKNOWN
    f2 = make_germ("A", 3, -1, 1, p=3, q=0)
    g2 = make_germ("B", 2, -1, p=3, q=0)
    t = tail_status(f2, g2, Channel.PLUS)
    assert t.kind is TailKind.CONDITIONAL and len(t.conditions) == 1
    # adjacent signature: nothing is known beyond the window
    f3 = make_germ("A", 3, 1, 1, p=2, q=1)
    assert tail_status(f3, make_germ("B", 2, 1, p=2, q=1), Channel.NAIVE).kind is TailKind.UNKNOWN
