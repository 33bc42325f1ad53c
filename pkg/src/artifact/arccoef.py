"""Arc-space coefficients of the normal forms and truncated zeta functions.

For a germ f in n variables and m >= 1 the package uses four classes of
truncated arcs:

``zero``  arcs with f(gamma(t)) = 0*t^m + ...            (A^0_m)
``sign``  arcs with f(gamma(t)) = xi*t^m + ...           (A^xi_m)
``lift``  arcs with f(gamma(t)) = c*t^m + ..., c real    (0A_m)
``net``   arcs with f(gamma(t)) = c*t^m + ..., c != 0     (A_m = lift - zero)

and the lift is u^n times the zero class one degree lower.  Coefficients
are available only in the proven range of each family; anything else raises
:class:`OutOfRange`.  Pairs are indexed by their critical degree: the A/B
pair (A_{2k-1}, B_k) by 2k, the C/D pair (D_{k+1}, C_k) by k, E6/F4 by 4.

Notation inside the formulas: s = p + q, Y the quadric cone of the
signature with the involution of the germ, Yp = Y minus the origin, Yxi the
level set {Q = xi}, and G(d, c) = 1 + u^d + ... + u^((c-1)d).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import OutOfRange
from .germs import Family, GermNormalForm, PairRoute, pair_route
from .grim import (
    PT, Flip, GAction, QuadSig, beta_affine, beta_curve_zero, beta_cusp_fiber,
    beta_diagonal_zero, beta_level_set, beta_Y, beta_Y_fiber, beta_Y_punctured, residual_atom,
)
from .qring import (
    ONE, ZERO, AtomCondition, AtomTemplate, Channel, RatFunc, SeriesValue, TailKind,
    TailStatus, U, ZetaSeries, as_value, sorted_conditions, upow,
)

# rule identifiers shared with the classifier and the CLI
RULE_AB_NAIVE_TAIL = "ab-naive-tail-equal"
RULE_AB_SIGNED_TAIL = "ab-signed-tail-equal"
RULE_AB_SIGNED_ATOMS = "ab-signed-tail-even-fibers"
RULE_CD_NAIVE_TAIL = "cd-naive-tail-equal"
RULE_CD_SIGNED_TAIL = "cd-signed-tail-equal"
RULE_CD_SIGNED_EVEN = "cd-signed-tail-even-fibers"
RULE_CD_SIGNED_ODD = "cd-signed-tail-odd-fibers"
RULE_EF_NAIVE_TAIL = "ef-naive-tail-equal"
RULE_EF_SIGNED_ATOMS = "ef-signed-tail-mixed-fibers"


class CoeffChannel(str, Enum):
    ZERO = "zero"
    SIGN = "sign"
    LIFT = "lift"
    NET = "net"


@dataclass(frozen=True, slots=True)
class CoeffRequest:
    germ: GermNormalForm
    m: int
    channel: CoeffChannel
    xi: int | None = None


# ---------------------------------------------------------------------------
# small helpers

def _geo(d: int, count: int) -> RatFunc:
    """G(d, count), summed term by term; d may be negative."""
    out = ZERO
    for t in range(count):
        out = out + upow(t * d)
    return out


def y_action(g: GermNormalForm) -> GAction:
    """Involution induced on the quadric cone of the germ's quadratic part."""
    if g.acted_sign is None:
        return GAction.CASE4
    return GAction.CASE1 if g.acted_sign > 0 else GAction.CASE2


def top_flip(g: GermNormalForm) -> Flip:
    """Where the involution sits on the residual sets of the critical degree."""
    if g.acted_sign is not None:
        return Flip.PLUS_SQUARE if g.acted_sign > 0 else Flip.MINUS_SQUARE
    return Flip.NONE if g.family is Family.C else Flip.POWER


def _sig(g: GermNormalForm) -> QuadSig:
    return QuadSig(g.p, g.q)


def pair_degree(g: GermNormalForm) -> int | None:
    """Critical degree of the cross pair the germ can belong to, if any."""
    f = g.family
    if f is Family.A:
        return g.k + 1 if g.k >= 3 and g.k % 2 else None
    if f is Family.B:
        return 2 * g.k
    if f is Family.C:
        return g.k
    if f is Family.D:
        return g.k - 1
    if f in (Family.E6, Family.F4):
        return 4
    return None


def validity_bound(g: GermNormalForm) -> int | None:
    """Largest m with a closed form; None means every m (A_0)."""
    f = g.family
    if f is Family.A:
        if g.k == 0:
            return None
        if g.k == 1:
            return 2
        return g.k + 1 if g.k % 2 else g.k
    if f in (Family.E7, Family.E8):
        return 0
    return pair_degree(g)


def check_range(g: GermNormalForm, m: int) -> None:
    bound = validity_bound(g)
    if m < 1:
        raise OutOfRange(f"degree must be positive, got {m}", m, bound)
    if bound is not None and m > bound:
        if bound == 0:
            raise OutOfRange(f"no closed forms are available for {g.name}", m, bound)
        raise OutOfRange(f"T^{m} is beyond the proven range of {g.name} (m <= {bound})", m, bound)


def default_order(g: GermNormalForm) -> int:
    bound = validity_bound(g)
    return 6 if bound is None else bound


# ---------------------------------------------------------------------------
# A/B low degrees: the three-case formulas and their single generic form

def ab_generic(m: int, p: int, q: int, action: GAction, xi: int | None = None) -> RatFunc:
    """Generic closed form for A^0_m (xi None) or A^xi_m, with G loops."""
    s = p + q
    Yp = beta_Y_punctured(QuadSig(p, q), action)
    if m % 2:
        r = (m - 1) // 2
        head = upow(m + (r + 1) * s - 1) * _geo(s - 2, r) * Yp if r else ZERO
        if xi is not None:
            return head
        return head + upow((r + 1) * (2 + s)) / (U - 1)
    r = m // 2
    head = upow(m + (r + 1) * s - 2) * _geo(s - 2, r - 1) * Yp if r > 1 else ZERO
    if xi is None:
        return head + upow(r * (2 + s)) * beta_Y(QuadSig(p, q), action)
    return head + upow(r * (2 + s)) * beta_Y_fiber(QuadSig(p, q), xi, action)


def ab_dedicated(m: int, p: int, q: int, action: GAction, xi: int | None = None) -> RatFunc:
    """The separate formulas for a degenerate cone (pq = 0) or (p, q) = (1, 1)."""
    s = p + q
    sig = QuadSig(p, q)
    if p * q == 0:
        if m % 2:
            r = (m - 1) // 2
            return ZERO if xi is not None else upow(m + (r + 1) * s + 1) / (U - 1)
        r = m // 2
        if xi is None:
            return upow(m + r * s + 1) / (U - 1)
        return upow(m + r * s) * beta_Y_fiber(sig, xi, action)
    if (p, q) != (1, 1):
        raise ValueError("dedicated formulas cover pq = 0 and (1, 1) only")
    Yp = beta_Y_punctured(sig, action)
    if m % 2:
        r = (m - 1) // 2
        head = r * upow(2 * m) * Yp
        return head if xi is not None else head + upow(4 * (r + 1)) / (U - 1)
    r = m // 2
    head = (r - 1) * upow(2 * m) * Yp
    if xi is None:
        return head + upow(4 * r) * beta_Y(sig, action)
    return head + upow(4 * r) * beta_Y_fiber(sig, xi, action)


def _ab_low(m: int, p: int, q: int, action: GAction, xi: int | None) -> RatFunc:
    if p * q == 0 or (p, q) == (1, 1):
        return ab_dedicated(m, p, q, action, xi)
    return ab_generic(m, p, q, action, xi)


def _ab_top(g: GermNormalForm, kk: int, xi: int | None) -> SeriesValue:
    """Degree 2kk of the A/B pair; the last equation carries eps*a^(2kk)."""
    s = g.p + g.q
    Yp = beta_Y_punctured(_sig(g), y_action(g))
    head = ZERO
    if not Yp.is_zero():
        head = upow(2 * kk - 2 + s * (kk + 1)) * _geo(s - 2, kk - 1) * Yp
    scale = upow(kk * s + 2 * kk - 1)
    if xi is None:
        last = as_value(beta_diagonal_zero(2 * kk, _sig(g), g.eps, top_flip(g)))
    else:
        last = beta_level_set(2 * kk, g.p, g.q, g.eps, xi, top_flip(g))
    return head + last.scale(scale)


@lru_cache(maxsize=4096)
def _ab(g: GermNormalForm, m: int, xi: int | None) -> SeriesValue:
    if g.family not in (Family.A, Family.B):
        raise ValueError(f"{g.name} is not in the A/B families")
    check_range(g, m)
    if g.family is Family.A and g.k == 0:
        # every equation solves for one coordinate of the power variable
        return as_value(beta_affine(m * g.n - m))
    if g.family is Family.A and g.k == 1:
        if m == 1:
            return as_value(ZERO if xi is not None else beta_affine(g.n))
        full = QuadSig(*g.full_signature())
        base = beta_Y(full, y_action(g)) if xi is None else beta_Y_fiber(full, xi, y_action(g))
        return as_value(upow(g.n) * base)
    kk = pair_degree(g)
    if kk is not None and m == kk:
        return _ab_top(g, kk // 2, xi)
    return as_value(_ab_low(m, g.p, g.q, y_action(g), xi))


def ab_coeff0(g: GermNormalForm, m: int) -> SeriesValue:
    return _ab(g, m, None)


def ab_coeffxi(g: GermNormalForm, m: int, xi: int) -> SeriesValue:
    return _ab(g, m, xi)


def beta_germ_fiber(g: GermNormalForm, xi: int) -> SeriesValue:
    """{f = xi} for f = eps*x^(2k) + Q_{p,q} of the A/B pair (level-set reduction)."""
    if g.family not in (Family.A, Family.B) or pair_degree(g) is None:
        raise ValueError(f"{g.name} is not a member of an A/B pair")
    return beta_level_set(pair_degree(g), g.p, g.q, g.eps, xi, top_flip(g))


# ---------------------------------------------------------------------------
# C/D

def cd_generic(m: int, p: int, q: int, action: GAction, xi: int | None = None) -> RatFunc:
    s = p + q
    sig = QuadSig(p, q)
    Yp1 = beta_Y_punctured(sig, action) + ONE
    if m % 2:
        r = (m - 1) // 2
        head = upow(3 * r + 2 + (r + 1) * s) * _geo(s - 1, r) * Yp1 if r else ZERO
        if xi is not None:
            return head
        return head + upow(3 * r + 3 + (r + 1) * s) / (U - 1)
    r = m // 2
    head = upow(3 * r + (r + 1) * s) * _geo(s - 1, r - 1) * Yp1 if r > 1 else ZERO
    last = beta_Y(sig, action) if xi is None else beta_Y_fiber(sig, xi, action)
    return head + upow(3 * r + 1 + r * s) * last


def cd_dedicated(m: int, p: int, q: int, action: GAction, xi: int | None = None) -> RatFunc:
    """Separate formulas for a single square (p + q = 1)."""
    if p + q != 1:
        raise ValueError("dedicated formulas cover p + q = 1 only")
    if m % 2:
        r = (m - 1) // 2
        head = r * upow(2 * m + 1)
        return head if xi is not None else head + upow(4 * r + 4) / (U - 1)
    r = m // 2
    head = (r - 1) * upow(2 * m + 1)
    if xi is None:
        return head + upow(4 * r + 2) / (U - 1)
    return head + upow(4 * r + 1) * beta_Y_fiber(QuadSig(p, q), xi, action)


def _cd_top(g: GermNormalForm, kk: int, xi: int | None) -> SeriesValue:
    s = g.p + g.q
    Yp = beta_Y_punctured(_sig(g), y_action(g))
    flip = top_flip(g)
    if kk % 2:
        l = kk // 2
        out = upow(3 * l + 2 + (l + 1) * s) * _geo(s - 1, l) * Yp
        out = out + upow(3 * l + 1 + (l + 2) * s) * _geo(s - 1, l - 1)
        scale = upow(3 * l + 1 + (l + 1) * s)
        flip_x = g.family is Family.C
        if xi is None:
            last = as_value(beta_curve_zero(l, g.eps, flip_x))
        elif g.eps > 0:
            last = as_value(beta_cusp_fiber(l, xi, flip_x))
        else:
            atom = residual_atom(AtomTemplate.CURVE_MIXED, kk, 1, 1, 0, xi,
                                 Flip.POWER if flip_x else Flip.NONE)
            last = SeriesValue.atom(atom)
        return last.scale(scale) + out
    l = kk // 2
    out = upow(3 * l + (l + 1) * s) * _geo(s - 1, l - 1) * (Yp + ONE)
    scale = upow(3 * l + l * s)
    if xi is None:
        last = as_value(beta_diagonal_zero(kk, _sig(g), g.eps, flip))
    else:
        last = beta_level_set(kk, g.p, g.q, g.eps, xi, flip)
    return last.scale(scale) + out


@lru_cache(maxsize=4096)
def _cd(g: GermNormalForm, m: int, xi: int | None) -> SeriesValue:
    if g.family not in (Family.C, Family.D):
        raise ValueError(f"{g.name} is not in the C/D families")
    check_range(g, m)
    kk = pair_degree(g)
    if m == kk:
        return _cd_top(g, kk, xi)
    if g.p + g.q == 1:
        return as_value(cd_dedicated(m, g.p, g.q, y_action(g), xi))
    return as_value(cd_generic(m, g.p, g.q, y_action(g), xi))


def cd_coeff0(g: GermNormalForm, m: int) -> SeriesValue:
    return _cd(g, m, None)


def cd_coeffxi(g: GermNormalForm, m: int, xi: int) -> SeriesValue:
    return _cd(g, m, xi)


# ---------------------------------------------------------------------------
# E6/F4

@lru_cache(maxsize=4096)
def _ef(g: GermNormalForm, m: int, xi: int | None) -> SeriesValue:
    if g.family not in (Family.E6, Family.F4):
        raise ValueError(f"{g.name} is not in the E6/F4 families")
    check_range(g, m)
    s = g.p + g.q
    sig, act = _sig(g), y_action(g)
    if m == 1:
        return as_value(ZERO if xi is not None else beta_affine(g.n))
    if m == 2:
        base = beta_Y(sig, act) if xi is None else beta_Y_fiber(sig, xi, act)
        return as_value(upow(4 + s) * base)
    Yp = beta_Y_punctured(sig, act)
    if m == 3:
        # the cubic coordinate is forced (to 0, or to the real cube root of xi)
        return as_value(upow(2 * s + 5) * Yp + upow(2 * s + 6) / (U - 1))
    if xi is None:
        last = as_value(beta_diagonal_zero(4, sig, g.eps, top_flip(g)))
    else:
        last = beta_level_set(4, g.p, g.q, g.eps, xi, top_flip(g))
    return last.scale(upow(2 * s + 6)) + upow(3 * s + 6) * Yp


def ef_coeff0(g: GermNormalForm, m: int) -> SeriesValue:
    return _ef(g, m, None)


def ef_coeffxi(g: GermNormalForm, m: int, xi: int) -> SeriesValue:
    return _ef(g, m, xi)


# ---------------------------------------------------------------------------
# dispatch, lift, net

def coeff0(g: GermNormalForm, m: int) -> SeriesValue:
    f = g.family
    if f in (Family.A, Family.B):
        return ab_coeff0(g, m)
    if f in (Family.C, Family.D):
        return cd_coeff0(g, m)
    if f in (Family.E6, Family.F4):
        return ef_coeff0(g, m)
    check_range(g, m)
    raise AssertionError("unreachable")


def coeffxi(g: GermNormalForm, m: int, xi: int) -> SeriesValue:
    if xi not in (1, -1):
        raise ValueError("xi must be +1 or -1")
    f = g.family
    if f in (Family.A, Family.B):
        return ab_coeffxi(g, m, xi)
    if f in (Family.C, Family.D):
        return cd_coeffxi(g, m, xi)
    if f in (Family.E6, Family.F4):
        return ef_coeffxi(g, m, xi)
    check_range(g, m)
    raise AssertionError("unreachable")


def lift_coeff(g: GermNormalForm, m: int) -> SeriesValue:
    check_range(g, m)
    if m == 1:
        return as_value(beta_affine(g.n))
    return coeff0(g, m - 1).scale(upow(g.n))


def net_coeff(g: GermNormalForm, m: int) -> SeriesValue:
    return lift_coeff(g, m) - coeff0(g, m)


def coefficient(req: CoeffRequest) -> SeriesValue:
    ch = CoeffChannel(req.channel)
    if ch is CoeffChannel.ZERO:
        return coeff0(req.germ, req.m)
    if ch is CoeffChannel.SIGN:
        return coeffxi(req.germ, req.m, req.xi)
    if ch is CoeffChannel.LIFT:
        return lift_coeff(req.germ, req.m)
    return net_coeff(req.germ, req.m)


def channel_coeff(g: GermNormalForm, m: int, channel: Channel) -> SeriesValue:
    """Coefficient of T^m in the zeta function of the channel, u^(-mn) applied."""
    channel = Channel(channel)
    raw = net_coeff(g, m) if channel is Channel.NAIVE else coeffxi(g, m, channel.xi)
    return raw.scale(upow(-m * g.n))


# ---------------------------------------------------------------------------
# tails

def dominant(p: int, q: int, eta: int) -> bool:
    """The acted square sits in a group larger by at least two."""
    return (p > q + 1 and eta > 0) or (q > p + 1 and eta < 0)


def cross_members(g1: GermNormalForm, g2: GermNormalForm):
    """(route, acted member, power member, pair index) for a cross pair, else None."""
    route = pair_route(g1, g2)
    if route not in (PairRoute.CROSS_AB, PairRoute.CROSS_CD, PairRoute.CROSS_EF):
        return None
    acted, power = (g1, g2) if g1.acted_sign is not None else (g2, g1)
    if route is PairRoute.CROSS_AB:
        kk = power.k
    elif route is PairRoute.CROSS_CD:
        kk = power.k
    else:
        kk = 4
    return route, acted, power, kk


def fiber_conditions(route: PairRoute, acted: GermNormalForm, power: GermNormalForm,
                     kk: int, xi: int) -> list[AtomCondition]:
    """Atom equalities left open for the signed channel xi of a dominant cross pair.

    After the hyperbolic pairs are removed the residual sets carry K = |p - q|
    squares of the dominant sign; the acted member flips one of them, the
    power member flips its power variable (or nothing for C_k).
    """
    eta, eps = acted.acted_sign, acted.eps
    K = abs(acted.p - acted.q)
    plus, minus = (K, 0) if eta > 0 else (0, K)
    aflip = top_flip(acted)
    pflip = top_flip(power)
    out = []

    def add(template, e, s, flip_b, quartic=0):
        a = residual_atom(template, e, s, plus, minus, xi, aflip, quartic)
        b = residual_atom(template, e, s, plus, minus, xi, flip_b, quartic)
        if a is not None and b is not None and a != b:
            out.append(AtomCondition.between(a, b))

    if route is PairRoute.CROSS_AB:
        add(AtomTemplate.EVEN_MIXED, 2 * kk, eps, pflip)
    elif route is PairRoute.CROSS_CD:
        if kk % 2 == 0:
            add(AtomTemplate.EVEN_MIXED, kk, eps, pflip)
        elif eps > 0:
            add(AtomTemplate.ODD_MIXED, kk, 1, pflip)
    else:
        # the cubic set does not involve the quartic variable
        add(AtomTemplate.CUBIC_MIXED, 3, 1, Flip.NONE)
        add(AtomTemplate.EVEN_MIXED, 4, eps, pflip)
        add(AtomTemplate.QUARTIC_CUBIC_MIXED, 3, 1, pflip, eps)
    return out


def tail_status(g: GermNormalForm, partner: GermNormalForm | None, channel: Channel) -> TailStatus:
    """Tail annotation of the zeta function of g compared with partner."""
    channel = Channel(channel)
    if partner is None:
        return TailStatus()
    info = cross_members(g, partner)
    if info is None:
        return TailStatus()
    route, acted, power, kk = info
    if not dominant(acted.p, acted.q, acted.acted_sign):
        return TailStatus()
    eps, eta = acted.eps, acted.acted_sign
    if route is PairRoute.CROSS_AB:
        if channel is Channel.NAIVE:
            if eps == eta or kk % 2 == 0:
                return TailStatus(TailKind.EQUAL, RULE_AB_NAIVE_TAIL)
            return TailStatus()
        if eps == eta:
            return TailStatus(TailKind.EQUAL, RULE_AB_SIGNED_TAIL)
        if kk % 2 == 0:
            conds = fiber_conditions(route, acted, power, kk, channel.xi)
            return TailStatus(TailKind.CONDITIONAL, RULE_AB_SIGNED_ATOMS, sorted_conditions(conds))
        return TailStatus()
    if route is PairRoute.CROSS_CD:
        if kk % 2 and eps < 0:
            return TailStatus()
        if channel is Channel.NAIVE:
            return TailStatus(TailKind.EQUAL, RULE_CD_NAIVE_TAIL)
        if kk % 2 == 0 and eps == eta:
            return TailStatus(TailKind.EQUAL, RULE_CD_SIGNED_TAIL)
        rule = RULE_CD_SIGNED_EVEN if kk % 2 == 0 else RULE_CD_SIGNED_ODD
        conds = fiber_conditions(route, acted, power, kk, channel.xi)
        return TailStatus(TailKind.CONDITIONAL, rule, sorted_conditions(conds))
    if channel is Channel.NAIVE:
        return TailStatus(TailKind.EQUAL, RULE_EF_NAIVE_TAIL)
    conds = fiber_conditions(route, acted, power, kk, channel.xi)
    return TailStatus(TailKind.CONDITIONAL, RULE_EF_SIGNED_ATOMS, sorted_conditions(conds))


def zeta_truncated(g: GermNormalForm, channel: Channel = Channel.NAIVE, M: int | None = None,
                   partner: GermNormalForm | None = None) -> ZetaSeries:
    """Coefficients of T^1..T^M; the tail is annotated only relative to a partner."""
    channel = Channel(channel)
    if M is None:
        M = default_order(g)
    check_range(g, M)
    coeffs = tuple(channel_coeff(g, m, channel) for m in range(1, M + 1))
    return ZetaSeries(g.n, channel, coeffs, M, tail_status(g, partner, channel))
