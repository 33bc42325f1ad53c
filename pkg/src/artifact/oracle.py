"""Independent recomputation of the closed forms by explicit stratification.

Nothing here calls the closed forms of :mod:`grim` or :mod:`arccoef`.  The
only shared pieces are the ring, the leaf values (point, affine space,
sphere) and the canonical naming of unresolved level sets.  Each routine
follows the stratification a proof would use: remove a hyperbolic pair,
blow up the origin, or peel off the stratum where the first coordinate of
an arc coefficient is nonzero, and then recurse.

The tempting substitution that straightens {x^2*z + z^(2l+1) = xi} by a
change of variables mixing x and z is not used: its strata are not stable
under the involution flipping x, so it would not be an equivariant cut.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import IncompatibleAction, OutOfRange, UnsupportedAction
from .germs import Family, GermNormalForm
from .grim import Flip, GAction, PointKind, beta_affine, beta_point, beta_sphere, residual_atom
from .qring import ZERO, AtomTemplate, RatFunc, SeriesValue, U, as_value, upow


@dataclass
class RecursionTrace:
    """Derivation log: each step is (description, contribution)."""

    steps: list = field(default_factory=list)

    def add(self, what: str, value) -> SeriesValue:
        v = as_value(value)
        self.steps.append((what, v))
        return v

    @property
    def total(self) -> SeriesValue:
        out = SeriesValue()
        for _, v in self.steps:
            out = out + v
        return out

    def render(self) -> str:
        lines = [f"  {what}: {v}" for what, v in self.steps]
        lines.append(f"  total: {self.total}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# cones and their level sets

def _check(p: int, q: int, action: GAction) -> None:
    if action is GAction.CASE1 and p < 1 or action is GAction.CASE2 and q < 1:
        raise IncompatibleAction(f"{action.value} is impossible for signature ({p},{q})")


@lru_cache(maxsize=None)
def _oracle_Y(p: int, q: int, action: GAction) -> RatFunc:
    if q < p:
        p, q, action = q, p, action.swapped()
    if p == 0:
        return beta_point()
    # remove p - 1 hyperbolic pairs u_i*v_i: {u_i != 0} is R* x R^(d-2) in ambient
    # dimension d, and on {u_i = 0} the coordinate v_i is free
    out = ZERO
    d = p + q
    for i in range(p - 1):
        out = out + upow(i) * (U - 1) * beta_affine(d - 2)
        d -= 2
    # blow up the origin of what is left: y_1^2 - y_{p+1}^2 - (q - p remaining squares)
    if p == q:
        # two lines; in the chart the strict transform meets the exceptional set in {1 = v^2}
        swapped = action in (GAction.CASE1, GAction.CASE2)
        pts = beta_point(PointKind.TWO_SWAPPED if swapped else PointKind.TWO_FIXED)
        base = (U - 1) * pts + beta_point()
    else:
        # punctured cone is R* times a sphere; the flip of y_1 acts antipodally on it
        base = (U - 1) * beta_sphere(q - p, action is not GAction.CASE1) + beta_point()
    return out + upow(p - 1) * base


def oracle_Y(sig, action: GAction) -> RatFunc:
    p, q = sig
    _check(p, q, action)
    return _oracle_Y(p, q, GAction(action))


def _oracle_Z(p: int, q: int, action: GAction) -> RatFunc:
    """Projective quadric: the punctured cone is an R*-bundle over it."""
    if p + q == 0:
        return ZERO
    return (_oracle_Y(p, q, action) - beta_point()) / (U - 1)


def oracle_Y_fiber(sig, xi: int, action: GAction) -> RatFunc:
    """Compactify {Q = xi} into a quadric one dimension up; infinity is the old quadric."""
    p, q = sig
    if action is GAction.CASE3:
        raise UnsupportedAction("the compactifying coordinate is fixed under flip-all")
    _check(p, q, action)
    big = _oracle_Z(p, q + 1, action) if xi > 0 else _oracle_Z(p + 1, q, action)
    return big - _oracle_Z(p, q, action)


# ---------------------------------------------------------------------------
# residual sets

def _merged(p: int, q: int, eps: int) -> tuple[int, int]:
    return (p + 1, q) if eps > 0 else (p, q + 1)


def _head_action(flip: Flip, eps: int) -> GAction:
    if flip is Flip.PLUS_SQUARE:
        return GAction.CASE1
    if flip is Flip.MINUS_SQUARE:
        return GAction.CASE2
    if flip is Flip.POWER:
        return GAction.CASE1 if eps > 0 else GAction.CASE2
    if flip is Flip.ALL:
        return GAction.CASE3
    return GAction.CASE4


def oracle_diag_zero(e: int, sig, eps: int, flip: Flip) -> RatFunc:
    """{eps*x^e + Q = 0} by repeated blowing-up at the origin.

    In the chart x = w, y = w*z the strict transform is {eps*w^(e-2) + Q(z) = 0};
    the part over {w = 0} is the cone {Q(z) = 0}.  A flip of x becomes a flip
    of w and of every z; a flip of everything becomes a flip of w only.
    """
    p, q = sig
    if e == 2:
        return oracle_Y(_merged(p, q, eps), _head_action(flip, eps))
    if e % 2:
        # each equation in the chart peels off one more copy of the cone
        return beta_affine(p + q) - e * oracle_Y((p, q), _cone(flip)) + e * beta_point()
    if flip is Flip.POWER:
        nxt, cone = Flip.ALL, GAction.CASE3
    elif flip is Flip.ALL:
        nxt, cone = Flip.POWER, GAction.CASE4
    else:
        nxt, cone = flip, _cone(flip)
    return oracle_diag_zero(e - 2, sig, eps, nxt) - oracle_Y((p, q), cone) + beta_point()


def _cone(flip: Flip) -> GAction:
    return {Flip.PLUS_SQUARE: GAction.CASE1, Flip.MINUS_SQUARE: GAction.CASE2}.get(flip, GAction.CASE4)


def oracle_curve_zero(l: int, eps: int, flip_x: bool) -> RatFunc:
    """{z*(x^2 + eps*z^(2l)) = 0}: the line {z = 0} and the curve, glued at the origin."""
    line = beta_affine(1)
    curve = oracle_diag_zero(2 * l, (1, 0), eps, Flip.PLUS_SQUARE if flip_x else Flip.NONE)
    return line + curve - beta_point()


def oracle_cusp_fiber(l: int, xi: int, flip_x: bool) -> RatFunc:
    # for each x there is exactly one z with z*(x^2 + z^(2l)) = xi: a graph over the line
    return beta_affine(1)


def oracle_level_set(e: int, plus: int, minus: int, s: int, xi: int, flip: Flip) -> SeriesValue:
    """{s*x^e + Q_{plus,minus} = xi}, removing unflipped pairs y_i^2 - y_j^2 = a*b."""
    fp = 1 if flip is Flip.PLUS_SQUARE else 0
    fm = 1 if flip is Flip.MINUS_SQUARE else 0
    if plus < fp or minus < fm:
        raise IncompatibleAction("the flipped square is missing")
    if plus - fp > 0 and minus - fm > 0:
        d = 1 + plus + minus
        # {a != 0}: b is solved for; {a = 0}: b is free
        rest = oracle_level_set(e, plus - 1, minus - 1, s, xi, flip)
        return as_value((U - 1) * beta_affine(d - 2)) + rest.scale(U)
    if plus == 0 and minus == 0:
        if s * xi < 0:
            return SeriesValue()
        kind = PointKind.TWO_SWAPPED if flip is Flip.POWER else PointKind.TWO_FIXED
        return as_value(beta_point(kind))
    if (minus == 0 and s > 0) or (plus == 0 and s < 0):
        # a definite level set: empty or a sphere meeting the fixed locus
        return as_value(ZERO if s * xi < 0 else beta_sphere(plus + minus, True))
    return SeriesValue.atom(residual_atom(AtomTemplate.EVEN_MIXED, e, s, plus, minus, xi, flip))


# ---------------------------------------------------------------------------
# arc coefficients

def _action(g: GermNormalForm) -> GAction:
    if g.acted_sign is None:
        return GAction.CASE4
    return GAction.CASE1 if g.acted_sign > 0 else GAction.CASE2


def _flip(g: GermNormalForm) -> Flip:
    if g.acted_sign is not None:
        return Flip.PLUS_SQUARE if g.acted_sign > 0 else Flip.MINUS_SQUARE
    return Flip.NONE if g.family is Family.C else Flip.POWER


def _Yp(g: GermNormalForm) -> RatFunc:
    return oracle_Y((g.p, g.q), _action(g)) - beta_point()


def _top(g: GermNormalForm) -> int | None:
    f = g.family
    if f is Family.A:
        return g.k + 1 if g.k >= 3 and g.k % 2 else None
    return {Family.B: 2 * g.k, Family.C: g.k, Family.D: g.k - 1}.get(f, 4)


def _bound(g: GermNormalForm) -> int | None:
    f = g.family
    if f is Family.A:
        if g.k == 0:
            return None
        if g.k == 1:
            return 2
        return g.k + 1 if g.k % 2 else g.k
    if f in (Family.E7, Family.E8):
        return 0
    return _top(g)


def _range(g: GermNormalForm, m: int) -> None:
    b = _bound(g)
    if m < 1 or (b is not None and m > b):
        raise OutOfRange(f"T^{m} is outside the oracle range of {g.name}", m, b)


def oracle_ab(m: int, g: GermNormalForm, xi: int | None = None, trace: RecursionTrace | None = None) -> SeriesValue:
    """Stratify on the first nonzero coordinate of c_1 and descend two degrees."""
    _range(g, m)
    tr = trace if trace is not None else RecursionTrace()
    s, n = g.p + g.q, g.n
    if g.k == 0 and g.family is Family.A:
        # m equations, each solved for one coordinate of the power variable
        tr.add("affine", upow(m * n - m) * beta_point())
        return tr.total
    if g.k == 1 and g.family is Family.A:
        if m == 1:
            tr.add("L_1", ZERO if xi is not None else beta_affine(n))
            return tr.total
        P, Q = g.full_signature()
        last = oracle_Y((P, Q), _action(g)) if xi is None else oracle_Y_fiber((P, Q), xi, _action(g))
        tr.add("quadric in all variables", upow(n) * last)
        return tr.total
    top = _top(g)
    scale = ZERO + 1
    mm = m
    while True:
        if top is not None and m == top and mm == 2:
            if xi is None:
                last = as_value(oracle_diag_zero(top, (g.p, g.q), g.eps, _flip(g)))
            else:
                last = oracle_level_set(top, g.p, g.q, g.eps, xi, _flip(g))
            tr.add("last equation eps*a^e + Q(c) = c0", last.scale(scale * upow(1 + s)))
            break
        if mm == 1:
            tr.add("A_1", ZERO if xi is not None else scale * beta_affine(n))
            break
        if mm == 2:
            last = oracle_Y((g.p, g.q), _action(g)) if xi is None else oracle_Y_fiber((g.p, g.q), xi, _action(g))
            tr.add("Q(c_1) = c0", scale * upow(2 + s) * last)
            break
        tr.add(f"c_1 != 0 at m={mm}", scale * upow(mm + (mm - 1) * (s - 1) + 1) * _Yp(g))
        scale = scale * upow(2 + s)
        mm -= 2
    return tr.total


def oracle_cd(m: int, g: GermNormalForm, xi: int | None = None, trace: RecursionTrace | None = None) -> SeriesValue:
    """C/D recursion; the stratum {a_1 != 0} adds an affine piece next to the cone."""
    _range(g, m)
    tr = trace if trace is not None else RecursionTrace()
    s, n = g.p + g.q, g.n
    top = _top(g)
    scale = ZERO + 1
    mm = m
    while True:
        if m == top and mm == 3 and top % 2:
            l = top // 2
            flip_x = g.family is Family.C
            tr.add("c_1 != 0 at m=3", scale * upow(2 * s + 5) * _Yp(g))
            if xi is None:
                last = as_value(oracle_curve_zero(l, g.eps, flip_x))
            elif g.eps > 0:
                last = as_value(oracle_cusp_fiber(l, xi, flip_x))
            else:
                last = SeriesValue.atom(residual_atom(AtomTemplate.CURVE_MIXED, top, 1, 1, 0, xi,
                                                      Flip.POWER if flip_x else Flip.NONE))
            tr.add("plane curve residual", last.scale(scale * upow(4 + 2 * s)))
            break
        if m == top and mm == 2:
            if xi is None:
                last = as_value(oracle_diag_zero(top, (g.p, g.q), g.eps, _flip(g)))
            else:
                last = oracle_level_set(top, g.p, g.q, g.eps, xi, _flip(g))
            tr.add("last equation eps*b^e + Q(c) = c0", last.scale(scale * upow(3 + s)))
            break
        if mm == 1:
            tr.add("A_1", ZERO if xi is not None else scale * beta_affine(n))
            break
        if mm == 2:
            last = oracle_Y((g.p, g.q), _action(g)) if xi is None else oracle_Y_fiber((g.p, g.q), xi, _action(g))
            tr.add("Q(c_1) = c0", scale * upow(4 + s) * last)
            break
        tr.add(f"(a_1, c_1) != 0 at m={mm}", scale * upow((mm - 1) * (s + 1) + 3) * (_Yp(g) + 1))
        scale = scale * upow(3 + s)
        mm -= 2
    return tr.total


def oracle_ef(m: int, g: GermNormalForm, xi: int | None = None, trace: RecursionTrace | None = None) -> SeriesValue:
    """Direct stratification of the first four equations."""
    _range(g, m)
    tr = trace if trace is not None else RecursionTrace()
    s, n = g.p + g.q, g.n
    sig, act = (g.p, g.q), _action(g)
    if m == 1:
        tr.add("A_1", ZERO if xi is not None else beta_affine(n))
    elif m == 2:
        last = oracle_Y(sig, act) if xi is None else oracle_Y_fiber(sig, xi, act)
        tr.add("Q(c_1) = c0", upow(4 + s) * last)
    elif m == 3:
        tr.add("c_1 != 0", upow(2 * s + 5) * _Yp(g))
        tr.add("c_1 = 0, cubic coordinate forced", beta_affine(2 * s + 5))
    else:
        tr.add("c_1 != 0", upow(3 * s + 6) * _Yp(g))
        if xi is None:
            last = as_value(oracle_diag_zero(4, sig, g.eps, _flip(g)))
        else:
            last = oracle_level_set(4, g.p, g.q, g.eps, xi, _flip(g))
        tr.add("eps*b^4 + Q(c_2) = c0", last.scale(upow(2 * s + 6)))
    return tr.total


def oracle_coeff(g: GermNormalForm, m: int, xi: int | None = None,
                 trace: RecursionTrace | None = None) -> SeriesValue:
    f = g.family
    if f in (Family.A, Family.B):
        return oracle_ab(m, g, xi, trace)
    if f in (Family.C, Family.D):
        return oracle_cd(m, g, xi, trace)
    if f in (Family.E6, Family.F4):
        return oracle_ef(m, g, xi, trace)
    raise OutOfRange(f"no stratification is available for {g.name}", m, 0)


def oracle_net(g: GermNormalForm, m: int) -> SeriesValue:
    lift = beta_affine(g.n) if m == 1 else oracle_coeff(g, m - 1).scale(upow(g.n))
    return lift - oracle_coeff(g, m)


def oracle_trace(g: GermNormalForm, m: int, xi: int | None = None) -> RecursionTrace:
    tr = RecursionTrace()
    oracle_coeff(g, m, xi, tr)
    return tr
