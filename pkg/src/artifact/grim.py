"""Equivariant virtual Poincare series of the building-block sets.

G is the group of order two.  Every value here is a :class:`RatFunc` in u,
or a :class:`SeriesValue` when an unresolved level set is involved.

Leaves
    a fixed point is u/(u-1), two fixed points 2u/(u-1), two exchanged
    points 1; an affine space R^d with any linear action is u^(d+1)/(u-1);
    the d-sphere is 1+u+...+u^d with a free antipodal action and
    2u/(u-1)+u+...+u^d when the action has a fixed point.

Quadric cones
    Y_{p,q} = {y_1^2+...+y_p^2 - y_{p+1}^2 - ... - y_{p+q}^2 = 0} under one
    of four involutions (flip a plus variable, flip a minus variable, flip
    everything, trivial).  Level sets Y^xi are obtained by compactifying
    into a projective quadric.

A word of warning on additivity.  The invariant is additive on
arc-symmetric pieces and respects birational isomorphisms, but it is not
invariant under arbitrary Nash bijections.  The hyperbola
{y_1^2 - y_2^2 = 1} with y_2 flipped looks like two copies of a line with a
reflection, which would suggest 2u^2/(u-1).  That is wrong: a branch of a
hyperbola is not birational to a line in the required sense, and the
correct value, obtained by compactification, is (u^2+1)/(u-1).  Oracles
in this package therefore only cut sets along arc-symmetric strata.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import IncompatibleAction, UnsupportedAction
from .qring import (
    ONE, ZERO, Atom, AtomTemplate, AtomVariant, RatFunc, SeriesValue, U, gsum_r, upow,
)


class GAction(str, Enum):
    CASE1 = "flip-plus"    # flip one plus-square variable
    CASE2 = "flip-minus"   # flip one minus-square variable
    CASE3 = "flip-all"
    CASE4 = "trivial"

    def swapped(self) -> "GAction":
        return {GAction.CASE1: GAction.CASE2, GAction.CASE2: GAction.CASE1}.get(self, self)


class Flip(str, Enum):
    """Where the involution acts on a set {s*x^e + Q_{p,q}(y) = c}."""

    PLUS_SQUARE = "flip-plus"
    MINUS_SQUARE = "flip-minus"
    POWER = "flip-x"
    NONE = "trivial"
    ALL = "flip-all"


class PointKind(str, Enum):
    ONE_FIXED = "one-fixed"
    TWO_FIXED = "two-fixed"
    TWO_SWAPPED = "two-swapped"


@dataclass(frozen=True, slots=True)
class QuadSig:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("signature counts must be nonnegative")


def _sig(sig) -> QuadSig:
    return sig if isinstance(sig, QuadSig) else QuadSig(*sig)


PT = U / (U - 1)


# ---------------------------------------------------------------------------
# leaves

def beta_point(kind: PointKind = PointKind.ONE_FIXED) -> RatFunc:
    if kind is PointKind.ONE_FIXED:
        return PT
    if kind is PointKind.TWO_FIXED:
        return 2 * PT
    return ONE


def beta_affine(d: int) -> RatFunc:
    return upow(d + 1) / (U - 1)


def beta_sphere(d: int, has_fixed_point: bool) -> RatFunc:
    if d < 0:
        raise ValueError("sphere dimension must be nonnegative")
    head = gsum_r(1, d + 1)  # 1 + u + ... + u^d
    if has_fixed_point:
        return head - 1 + 2 * PT
    return head


# ---------------------------------------------------------------------------
# quadric cones and their level sets

def check_action(sig: QuadSig, action: GAction) -> None:
    if action is GAction.CASE1 and sig.p < 1:
        raise IncompatibleAction(f"flipping a plus variable needs p >= 1, got p={sig.p}")
    if action is GAction.CASE2 and sig.q < 1:
        raise IncompatibleAction(f"flipping a minus variable needs q >= 1, got q={sig.q}")


@lru_cache(maxsize=None)
def _beta_Y(p: int, q: int, action: GAction) -> RatFunc:
    if q < p:
        p, q, action = q, p, action.swapped()
    if p == 0:
        return PT
    low = upow(p - 1) if action is GAction.CASE1 or (p == q and action is GAction.CASE2) else upow(p + 1)
    return (upow(p + q) - upow(q) + low) / (U - 1)


def beta_Y(sig, action: GAction) -> RatFunc:
    """Closed form for the cone Y_{p,q}; the roles of p and q swap when q < p."""
    sig = _sig(sig)
    check_action(sig, action)
    return _beta_Y(sig.p, sig.q, action)


def beta_Y_punctured(sig, action: GAction) -> RatFunc:
    return beta_Y(sig, action) - PT


def beta_Y_fiber(sig, xi: int, action: GAction) -> RatFunc:
    """Level set {Q_{p,q} = xi} through its projective compactification."""
    sig = _sig(sig)
    if action is GAction.CASE3:
        raise UnsupportedAction("level sets under the flip-all involution are not covered")
    check_action(sig, action)
    bigger = QuadSig(sig.p, sig.q + 1) if xi > 0 else QuadSig(sig.p + 1, sig.q)
    return (beta_Y(bigger, action) - beta_Y(sig, action)) / (U - 1)


def merged_signature(sig: QuadSig, eps: int) -> QuadSig:
    """Signature of eps*x^2 + Q_{p,q}."""
    return QuadSig(sig.p + (eps > 0), sig.q + (eps < 0))


def _flip_to_case(flip: Flip, eps: int) -> GAction:
    return {
        Flip.PLUS_SQUARE: GAction.CASE1,
        Flip.MINUS_SQUARE: GAction.CASE2,
        Flip.POWER: GAction.CASE1 if eps > 0 else GAction.CASE2,
        Flip.NONE: GAction.CASE4,
        Flip.ALL: GAction.CASE3,
    }[flip]


def _cone_action(flip: Flip) -> GAction:
    """Action induced on {Q_{p,q} = 0} once the power variable is gone."""
    if flip is Flip.PLUS_SQUARE:
        return GAction.CASE1
    if flip is Flip.MINUS_SQUARE:
        return GAction.CASE2
    return GAction.CASE4


def beta_diagonal_zero(e: int, sig, eps: int, action) -> RatFunc:
    """Zero set {eps*x^e + Q_{p,q}(y) = 0}.

    ``action`` is a :class:`Flip`.  For e = 2 a :class:`GAction` on the merged
    signature is also accepted.  Even exponents e = 2k are reduced by k - 1
    blowings-up at the origin; each one trades the set for the previous one
    minus a cone plus a point, and the induced action alternates when the
    power variable is flipped.
    """
    sig = _sig(sig)
    if e < 1:
        raise ValueError("exponent must be positive")
    if e == 2:
        merged = merged_signature(sig, eps)
        case = action if isinstance(action, GAction) else _flip_to_case(action, eps)
        return beta_Y(merged, case)
    if isinstance(action, GAction):
        raise IncompatibleAction("use a Flip to describe the action when e > 2")
    if action is Flip.PLUS_SQUARE and sig.p < 1 or action is Flip.MINUS_SQUARE and sig.q < 1:
        raise IncompatibleAction(f"{action.value} is impossible for signature ({sig.p},{sig.q})")
    cone = beta_Y(sig, _cone_action(action))
    if e % 2:
        if action in (Flip.POWER, Flip.ALL):
            raise IncompatibleAction("an odd power of a flipped variable is not invariant")
        return beta_affine(sig.p + sig.q) - e * cone + e * PT
    k = e // 2
    if action is Flip.POWER:
        first = _flip_to_case(Flip.POWER, eps) if k % 2 else GAction.CASE3
    elif action is Flip.ALL:
        first = GAction.CASE3 if k % 2 else _flip_to_case(Flip.POWER, eps)
    else:
        first = _flip_to_case(action, eps)
    head = beta_Y(merged_signature(sig, eps), first)
    return head - (k - 1) * cone + (k - 1) * PT


def beta_curve_zero(l: int, eps: int, flip_x: bool) -> RatFunc:
    """{x^2*z + eps*z^(2l+1) = 0} in the plane, one blowing-up away from a cone."""
    if l < 1:
        raise ValueError("l must be at least 1")
    cone = beta_Y(merged_signature(QuadSig(1, 0), eps), GAction.CASE1 if flip_x else GAction.CASE4)
    return cone - PT + upow(2) / (U - 1)


def beta_cusp_fiber(l: int, xi: int, flip_x: bool) -> RatFunc:
    """{x^2*z + z^(2l+1) = xi}: a circle with fixed points, minus a fixed point."""
    if l < 1:
        raise ValueError("l must be at least 1")
    return upow(2) / (U - 1)


def beta_definite_fiber(e: int, K: int, overall: int, xi: int, variant=None) -> RatFunc:
    """{overall*(x^e + y_1^2 + ... + y_K^2) = xi}: empty or a sphere with a fixed point."""
    if e < 2 or e % 2 or K < 1:
        raise ValueError("need an even exponent and at least one square")
    if overall * xi < 0:
        return ZERO
    return beta_sphere(K, True)


# ---------------------------------------------------------------------------
# residual level sets

_VARIANT = {
    Flip.PLUS_SQUARE: AtomVariant.FLIP_INSIDE_SQUARES,
    Flip.MINUS_SQUARE: AtomVariant.FLIP_ON_OPPOSITE_SQUARE,
    Flip.POWER: AtomVariant.FLIP_ON_POWER_VARIABLE,
    Flip.NONE: AtomVariant.TRIVIAL_ACTION,
}

_MIRROR = {Flip.PLUS_SQUARE: Flip.MINUS_SQUARE, Flip.MINUS_SQUARE: Flip.PLUS_SQUARE}


def make_residual(template: AtomTemplate, e: int, K: int, xi: int, variant: AtomVariant,
                  opposite: int = 0, quartic_sign: int = 0) -> SeriesValue:
    return SeriesValue.atom(Atom(template, e, K, xi, variant, opposite, quartic_sign))


def residual_atom(template: AtomTemplate, e: int, power_sign: int, plus: int, minus: int,
                  xi: int, flip: Flip, quartic_sign: int = 0) -> Atom | None:
    """Canonical atom for {power_sign*x^e [+ quartic] + Q_{plus,minus} = xi}.

    Returns None when the set is empty or sphere-like, which only happens for
    even exponents without a quartic term.  Conventions: for even e the
    power coefficient is made -1 by negating the equation; for odd e the
    power coefficient is made +1 with x -> -x, and then the orientation that
    puts the flipped square (or else the larger group of squares) on the
    plus side is chosen.
    """
    if flip is Flip.ALL:
        raise UnsupportedAction("atoms are not defined for the flip-all involution")
    if template is AtomTemplate.EVEN_MIXED:
        if e % 2:
            raise ValueError("EvenMixed needs an even exponent")
        if power_sign > 0:
            plus, minus, xi, flip = minus, plus, -xi, _MIRROR.get(flip, flip)
        if plus == 0:
            return None
        return Atom(template, e, plus, xi, _VARIANT[flip], minus)
    if template is AtomTemplate.CURVE_MIXED:
        # {x^2*z - z^e = xi} and {... = -xi} are exchanged by z -> -z
        return Atom(template, e, 1, 1, _VARIANT[flip])
    # odd power: x -> -x fixes the power sign, negation swaps the square groups
    if template is AtomTemplate.QUARTIC_CUBIC_MIXED and not quartic_sign:
        raise ValueError("the quartic-cubic template needs a quartic sign")
    if power_sign < 0:
        plus, minus, xi, flip, quartic_sign = minus, plus, -xi, _MIRROR.get(flip, flip), -quartic_sign
    swap = False
    if flip is Flip.MINUS_SQUARE:
        swap = True
    elif flip is not Flip.PLUS_SQUARE and (minus > plus or (minus == plus and xi < 0)):
        swap = True
    if swap:
        plus, minus, xi, flip, quartic_sign = minus, plus, -xi, _MIRROR.get(flip, flip), -quartic_sign
    return Atom(template, e, plus, xi, _VARIANT[flip], minus, quartic_sign)


def beta_level_set(e: int, plus: int, minus: int, power_sign: int, xi: int, flip: Flip) -> SeriesValue:
    """{power_sign*x^e + Q_{plus,minus}(y) = xi} for even e >= 4.

    Unflipped pairs y_i^2 - y_j^2 are removed one at a time: in ambient
    dimension d the stratum where y_i + y_j != 0 contributes u^(d-1) and the
    rest is R times the smaller set.  What remains is a pair of points, a
    sphere-like set, the empty set, or a genuinely mixed set kept as an atom.
    """
    if e < 4 or e % 2:
        raise ValueError("level sets are reduced for even exponents >= 4 only")
    if flip is Flip.ALL:
        raise UnsupportedAction("level sets under the flip-all involution are not covered")
    if flip is Flip.PLUS_SQUARE and plus < 1 or flip is Flip.MINUS_SQUARE and minus < 1:
        raise IncompatibleAction(f"{flip.value} is impossible for signature ({plus},{minus})")
    d = 1 + plus + minus
    t = min(plus - (flip is Flip.PLUS_SQUARE), minus - (flip is Flip.MINUS_SQUARE))
    head = upow(d - t) * gsum_r(1, t) if t else ZERO
    rest = _resolve_level(e, plus - t, minus - t, power_sign, xi, flip)
    return head + rest.scale(upow(t))


def _resolve_level(e: int, plus: int, minus: int, s: int, xi: int, flip: Flip) -> SeriesValue:
    if plus == 0 and minus == 0:
        if s * xi < 0:
            return SeriesValue()
        return SeriesValue.of(beta_point(PointKind.TWO_SWAPPED if flip is Flip.POWER else PointKind.TWO_FIXED))
    if (minus == 0 and s > 0) or (plus == 0 and s < 0):
        return SeriesValue.of(beta_definite_fiber(e, plus + minus, s, xi))
    atom = residual_atom(AtomTemplate.EVEN_MIXED, e, s, plus, minus, xi, flip)
    return SeriesValue.atom(atom)
