"""Exact arithmetic in Z[u] and Q(u), opaque atoms, and truncated series in T.

Polynomials are tuples of Python ints in ascending degree order, wrapped in
:class:`IntPoly`.  A :class:`RatFunc` is always stored in canonical form:
numerator and denominator coprime, no common integer content, positive
leading coefficient in the denominator.  Two canonical forms are equal iff
the rational functions are equal, so ``==`` is mathematical equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import IncomparableTails, NotExpandable

Coeffs = tuple  # tuple[int, ...], ascending degree


# ---------------------------------------------------------------------------
# raw tuple helpers

def _trim(c) -> Coeffs:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _add(a: Coeffs, b: Coeffs) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _neg(a: Coeffs) -> Coeffs:
    return tuple(-x for x in a)


def _sub(a: Coeffs, b: Coeffs) -> Coeffs:
    return _add(a, _neg(b))


def _mul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(a: Coeffs, e: int) -> Coeffs:
    return (0,) * e + a if a else ()


def _content(a: Coeffs) -> int:
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return g


def _order(a: Coeffs) -> int:
    """Multiplicity of the root 0."""
    i = 0
    while a[i] == 0:
        i += 1
    return i


def _div_u_minus_1(a: Coeffs) -> Coeffs:
    """Exact quotient a / (u - 1); caller guarantees a(1) == 0."""
    # synthetic division from the top
    n = len(a) - 1
    q = [0] * n
    carry = 0
    for i in range(n, 0, -1):
        carry += a[i]
        q[i - 1] = carry
    return _trim(q)


def _divmod_q(a, b):
    """Division with remainder over Q."""
    a = [Fraction(x) for x in a]
    lb = Fraction(b[-1])
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and any(a):
        d = len(a) - len(b)
        f = a[-1] / lb
        q[d] = f
        for i, y in enumerate(b):
            a[i + d] -= f * y
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _primitive_from_fractions(c) -> Coeffs:
    den = 1
    for x in c:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in c]
    g = _content(ints)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return _trim(ints)


def _gcd(a: Coeffs, b: Coeffs) -> Coeffs:
    """Primitive gcd with positive leading coefficient (Euclid over Q)."""
    x, y = list(a), list(b)
    while y:
        _, r = _divmod_q(x, y)
        x, y = y, r
    return _primitive_from_fractions([Fraction(v) for v in x])


def _exact_div(a: Coeffs, b: Coeffs) -> Coeffs:
    q, r = _divmod_q(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    out = []
    for x in q:
        if x.denominator != 1:
            raise ArithmeticError("non-integral polynomial quotient")
        out.append(int(x))
    return _trim(out)


def _is_u_one_power(a: Coeffs) -> bool:
    """True when a is c * u^i * (u - 1)^j for some integers c, i, j."""
    a = a[_order(a):]
    while len(a) > 1 and sum(a) == 0:
        a = _div_u_minus_1(a)
    return len(a) == 1


def _canonical(num: Coeffs, den: Coeffs) -> tuple[Coeffs, Coeffs]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), (1,)
    if len(den) > 1:
        i = min(_order(num), _order(den))
        if i:
            num, den = num[i:], den[i:]
        while len(den) > 1 and len(num) > 1 and sum(num) == 0 and sum(den) == 0:
            num, den = _div_u_minus_1(num), _div_u_minus_1(den)
        if len(den) > 1 and len(num) > 1 and not _is_u_one_power(den):
            g = _gcd(num, den)
            if len(g) > 1:
                num, den = _exact_div(num, g), _exact_div(den, g)
    c = math.gcd(_content(num), _content(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, den


# ---------------------------------------------------------------------------
# rendering

def _sup(e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "u"
    return f"u^{e}"


def _poly_text(c: Coeffs) -> str:
    if not c:
        return "0"
    parts = []
    for e in range(len(c) - 1, -1, -1):
        x = c[e]
        if not x:
            continue
        mag = abs(x)
        body = _sup(e)
        if not body:
            term = str(mag)
        elif mag == 1:
            term = body
        else:
            term = f"{mag}{body}"
        if not parts:
            parts.append(term if x > 0 else "-" + term)
        else:
            parts.append(("+" if x > 0 else "-") + term)
    return "".join(parts)


def _term_count(c: Coeffs) -> int:
    return sum(1 for x in c if x)


def _den_text(den: Coeffs) -> str:
    # (u-1)^e is written in factored form, everything else expanded
    e, d = 0, den
    while len(d) > 1 and sum(d) == 0:
        d = _div_u_minus_1(d)
        e += 1
    if e and d == (1,):
        return "(u-1)" if e == 1 else f"(u-1)^{e}"
    if _term_count(den) == 1:
        return _poly_text(den)
    return f"({_poly_text(den)})"


# ---------------------------------------------------------------------------
# public value types

@dataclass(frozen=True, slots=True)
class IntPoly:
    """Polynomial in u with integer coefficients, ascending degree."""

    coeffs: Coeffs = ()

    def __post_init__(self):
        c = tuple(self.coeffs)
        for x in c:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError("IntPoly coefficients must be int")
        object.__setattr__(self, "coeffs", _trim(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_add(self.coeffs, other.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_sub(self.coeffs, other.coeffs))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_mul(self.coeffs, other.coeffs))

    def __str__(self) -> str:
        return _poly_text(self.coeffs)


Scalar = Union[int, "RatFunc"]


@dataclass(frozen=True, slots=True)
class RatFunc:
    """Rational function num/den in u, kept in canonical reduced form."""

    num: IntPoly
    den: IntPoly

    def __init__(self, num=(), den=(1,)):
        n = num.coeffs if isinstance(num, IntPoly) else _trim(tuple(num))
        d = den.coeffs if isinstance(den, IntPoly) else _trim(tuple(den))
        n, d = _canonical(n, d)
        object.__setattr__(self, "num", IntPoly(n))
        object.__setattr__(self, "den", IntPoly(d))

    @classmethod
    def _raw(cls, n: Coeffs, d: Coeffs) -> "RatFunc":
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", IntPoly.__new__(IntPoly))
        object.__setattr__(obj.num, "coeffs", n)
        object.__setattr__(obj, "den", IntPoly.__new__(IntPoly))
        object.__setattr__(obj.den, "coeffs", d)
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "RatFunc":
        return cls._raw((c,) if c else (), (1,))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "RatFunc":
        """c * u^e for any integer e."""
        if e >= 0:
            return cls._raw(_shift((c,), e) if c else (), (1,))
        return cls((c,), _shift((1,), -e))

    @classmethod
    def poly(cls, coeffs: Iterable[int]) -> "RatFunc":
        return cls._raw(_trim(tuple(coeffs)), (1,))

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.coeffs

    def is_polynomial(self) -> bool:
        return self.den.coeffs == (1,)

    def degree(self) -> int:
        """deg num - deg den; the zero function has degree -inf by convention -10**9."""
        if self.is_zero():
            return -10**9
        return self.num.degree - self.den.degree

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, int):
            return RatFunc.const(x)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.num.coeffs, self.den.coeffs
        c, d = o.num.coeffs, o.den.coeffs
        if b == d:
            return RatFunc(_add(a, c), b)
        return RatFunc(_add(_mul(a, d), _mul(c, b)), _mul(b, d))

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(_neg(self.num.coeffs), self.den.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_polynomial() and o.is_polynomial():
            return RatFunc._raw(_mul(self.num.coeffs, o.num.coeffs), (1,))
        return RatFunc(_mul(self.num.coeffs, o.num.coeffs), _mul(self.den.coeffs, o.den.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        # exact division, used by the recursions that divide by (u - 1)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(_mul(self.num.coeffs, o.den.coeffs), _mul(self.den.coeffs, o.num.coeffs))

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return RatFunc.const(1) / (self ** -e)
        out = RatFunc.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __str__(self) -> str:
        n, d = self.num.coeffs, self.den.coeffs
        if d == (1,):
            return _poly_text(n)
        top = _poly_text(n)
        if _term_count(n) > 1:
            top = f"({top})"
        return f"{top}/{_den_text(d)}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


U = RatFunc.monomial(1)
ONE = RatFunc.const(1)
ZERO = RatFunc.const(0)


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def upow(e: int) -> RatFunc:
    """u^e."""
    return RatFunc.monomial(e)


def laurent_shift(a: RatFunc, e: int) -> RatFunc:
    """a * u^e in canonical form."""
    if a.is_zero() or e == 0:
        return a
    if e > 0:
        return RatFunc(_shift(a.num.coeffs, e), a.den.coeffs)
    return RatFunc(a.num.coeffs, _shift(a.den.coeffs, -e))


def gsum(d: int, count: int) -> IntPoly:
    """1 + u^d + u^(2d) + ... with ``count`` terms, summed term by term."""
    if d < 0 or count < 0:
        raise ValueError("gsum takes nonnegative arguments")
    out: Coeffs = ()
    for t in range(count):
        out = _add(out, _shift((1,), t * d))
    return IntPoly(out)


def gsum_r(d: int, count: int) -> RatFunc:
    return RatFunc.poly(gsum(d, count).coeffs)


def tail_expand(a: RatFunc, depth: int) -> list[int]:
    """Coefficients of u^-1 .. u^-depth in the expansion of a in powers of 1/u."""
    n, d = a.num.coeffs, a.den.coeffs
    if not n:
        return [0] * depth
    top = len(n) - len(d)  # exponent of the leading term
    # a = u^top * N(x) / D(x) with x = 1/u, N and D the reversed coefficient lists
    N = list(reversed(n))
    D = list(reversed(d))
    lead = D[0]
    need = top + depth + 1
    if need <= 0:
        return [0] * depth
    series: list[int] = []
    for j in range(need):
        acc = N[j] if j < len(N) else 0
        for i in range(1, min(j, len(D) - 1) + 1):
            acc -= D[i] * series[j - i]
        if acc % lead:
            raise NotExpandable(f"{a} has a non-integral expansion in 1/u")
        series.append(acc // lead)
    # coefficient of u^(top - j) is series[j]; u^-i corresponds to j = top + i
    return [series[top + i] if top + i >= 0 else 0 for i in range(1, depth + 1)]


# ---------------------------------------------------------------------------
# atoms and series values

class AtomTemplate(str, Enum):
    EVEN_MIXED = "EvenMixed"
    ODD_MIXED = "OddMixed"
    CUBIC_MIXED = "CubicMixed"
    QUARTIC_CUBIC_MIXED = "QuarticCubicMixed"
    CURVE_MIXED = "CurveMixed"


class AtomVariant(str, Enum):
    FLIP_INSIDE_SQUARES = "FlipInsideSquares"
    FLIP_ON_POWER_VARIABLE = "FlipOnPowerVariable"
    TRIVIAL_ACTION = "TrivialAction"
    FLIP_ON_OPPOSITE_SQUARE = "FlipOnOppositeSquare"


#: templates whose equalities may appear as classification conditions
CONDITION_TEMPLATES = frozenset(
    {AtomTemplate.EVEN_MIXED, AtomTemplate.ODD_MIXED, AtomTemplate.CUBIC_MIXED,
     AtomTemplate.QUARTIC_CUBIC_MIXED}
)


@dataclass(frozen=True, slots=True)
class Atom:
    """Opaque equivariant Poincare series of a level set left unevaluated.

    The set is described after normalization (see ``grim.make_residual``):
    ``K`` squares with coefficient +1, ``opposite`` squares with coefficient
    -1, one power term of the given exponent, and for the quartic-cubic
    template an extra quartic term whose sign is ``quartic_sign``.
    """

    template: AtomTemplate
    exponent: int
    K: int
    xi: int
    variant: AtomVariant
    opposite: int = 0
    quartic_sign: int = 0

    def __post_init__(self):
        if self.xi not in (1, -1):
            raise ValueError("xi must be +1 or -1")
        if self.exponent < 1 or self.K < 0 or self.opposite < 0:
            raise ValueError("bad atom parameters")

    def sort_key(self) -> tuple:
        return (self.template.value, self.exponent, self.K, self.opposite,
                self.quartic_sign, self.xi, self.variant.value)

    def key(self) -> str:
        extra = ""
        if self.opposite:
            extra += f",opp={self.opposite}"
        if self.quartic_sign:
            extra += f",quartic={'+' if self.quartic_sign > 0 else '-'}1"
        xi = "+1" if self.xi > 0 else "-1"
        return (f"{self.template.value}(e={self.exponent},K={self.K}{extra},"
                f"xi={xi},{self.variant.value})")

    def __str__(self) -> str:
        return self.key()


def _atom_items(m: Mapping[Atom, RatFunc]) -> tuple:
    return tuple(sorted(((a, c) for a, c in m.items() if not c.is_zero()),
                        key=lambda it: it[0].sort_key()))


@dataclass(frozen=True, slots=True)
class SeriesValue:
    """A rational function plus a finite combination of atoms."""

    rat: RatFunc = ZERO
    atoms: tuple = ()  # sorted ((Atom, RatFunc), ...), no zero coefficient

    @classmethod
    def of(cls, rat: Scalar = ZERO, atoms: Mapping[Atom, RatFunc] | None = None) -> "SeriesValue":
        r = RatFunc._coerce(rat)
        return cls(r, _atom_items(atoms or {}))

    @classmethod
    def atom(cls, a: Atom) -> "SeriesValue":
        return cls(ZERO, ((a, ONE),))

    @staticmethod
    def _coerce(x) -> "SeriesValue":
        if isinstance(x, SeriesValue):
            return x
        if isinstance(x, (RatFunc, int)):
            return SeriesValue(RatFunc._coerce(x), ())
        return NotImplemented

    def atom_map(self) -> dict:
        return dict(self.atoms)

    def is_atom_free(self) -> bool:
        return not self.atoms

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        m = self.atom_map()
        for a, c in o.atoms:
            m[a] = m.get(a, ZERO) + c
        return SeriesValue(self.rat + o.rat, _atom_items(m))

    __radd__ = __add__

    def __neg__(self) -> "SeriesValue":
        return SeriesValue(-self.rat, tuple((a, -c) for a, c in self.atoms))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def scale(self, c: Scalar) -> "SeriesValue":
        c = RatFunc._coerce(c)
        return SeriesValue(self.rat * c, _atom_items({a: x * c for a, x in self.atoms}))

    def __mul__(self, other):
        if isinstance(other, (RatFunc, int)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.atoms:
            return str(self.rat)
        parts = [] if self.rat.is_zero() else [str(self.rat)]
        for a, c in self.atoms:
            if c == ONE:
                parts.append(f"[{a}]")
            else:
                parts.append(f"({c})*[{a}]")
        return " + ".join(parts)


def value_arith(a: SeriesValue, b: SeriesValue, op: str) -> SeriesValue:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    raise ValueError(f"unknown operation {op!r}")


def value_scale(a: SeriesValue, c: RatFunc) -> SeriesValue:
    return a.scale(c)


def as_value(x) -> SeriesValue:
    v = SeriesValue._coerce(x)
    if v is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to SeriesValue")
    return v


# ---------------------------------------------------------------------------
# conditions, channels, tails, series

@dataclass(frozen=True, slots=True)
class AtomCondition:
    """An equality ``lhs == rhs`` between values involving atoms."""

    lhs: SeriesValue
    rhs: SeriesValue

    @classmethod
    def from_difference(cls, diff: SeriesValue) -> "AtomCondition":
        """The condition ``diff == 0`` written in the simplest symmetric way."""
        if diff.rat.is_zero() and len(diff.atoms) == 2:
            (a, ca), (b, cb) = diff.atoms
            if ca == -cb:
                return cls.between(a, b)
        return cls(diff, SeriesValue())

    @classmethod
    def between(cls, a: Atom, b: Atom) -> "AtomCondition":
        if b.sort_key() < a.sort_key():
            a, b = b, a
        return cls(SeriesValue.atom(a), SeriesValue.atom(b))

    def atoms(self) -> list[Atom]:
        return [a for a, _ in self.lhs.atoms] + [a for a, _ in self.rhs.atoms]

    def sort_key(self) -> tuple:
        return tuple(a.sort_key() for a in self.atoms())

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


def sorted_conditions(conds: Iterable[AtomCondition]) -> tuple:
    return tuple(sorted(set(conds), key=lambda c: (c.sort_key(), str(c))))


class Channel(str, Enum):
    NAIVE = "naive"
    PLUS = "plus"
    MINUS = "minus"

    @property
    def xi(self) -> int:
        return {Channel.PLUS: 1, Channel.MINUS: -1}[self]


class TailKind(str, Enum):
    UNKNOWN = "Unknown"
    EQUAL = "EqualByRule"
    CONDITIONAL = "ConditionalByRule"


@dataclass(frozen=True, slots=True)
class TailStatus:
    kind: TailKind = TailKind.UNKNOWN
    rule: str | None = None
    conditions: tuple = ()

    def __str__(self) -> str:
        if self.kind is TailKind.UNKNOWN:
            return "unknown"
        if self.kind is TailKind.EQUAL:
            return f"equal by rule {self.rule}"
        conds = "; ".join(str(c) for c in self.conditions)
        return f"equal by rule {self.rule} iff {conds}"


@dataclass(frozen=True, slots=True)
class ZetaSeries:
    """Coefficients 1..valid_to of a truncated zeta function in T."""

    n: int
    sign: Channel
    coeffs: tuple  # coeffs[m-1] is the coefficient of T^m
    valid_to: int
    tail: TailStatus = TailStatus()

    def coeff(self, m: int) -> SeriesValue:
        if not 1 <= m <= self.valid_to:
            raise IndexError(f"T^{m} is outside 1..{self.valid_to}")
        return self.coeffs[m - 1]


class CompareKind(str, Enum):
    EQUAL = "Equal"
    FIRST_DIFFERENCE = "FirstDifference"
    CONDITIONAL = "ConditionallyEqual"


@dataclass(frozen=True, slots=True)
class CompareResult:
    kind: CompareKind
    upto: int
    m: int | None = None
    lhs: SeriesValue | None = None
    rhs: SeriesValue | None = None
    conditions: tuple = ()


def series_compare(z1: ZetaSeries, z2: ZetaSeries) -> CompareResult:
    """Coefficientwise comparison followed by the tail annotations."""
    if z1.sign != z2.sign:
        raise ValueError("series belong to different sign channels")
    upto = min(z1.valid_to, z2.valid_to)
    conds: list[AtomCondition] = []
    for m in range(1, upto + 1):
        a, b = z1.coeff(m), z2.coeff(m)
        diff = a - b
        if diff.is_atom_free():
            if not diff.rat.is_zero():
                return CompareResult(CompareKind.FIRST_DIFFERENCE, upto, m, a, b)
        else:
            conds.append(AtomCondition.from_difference(diff))
    tails = (z1.tail, z2.tail)
    if any(t.kind is TailKind.UNKNOWN for t in tails):
        raise IncomparableTails(f"coefficients agree up to T^{upto} and a tail is unknown")
    if z1.tail.rule != z2.tail.rule:
        raise IncomparableTails("the two tails are annotated by different rules")
    for t in tails:
        conds.extend(t.conditions)
    if conds:
        return CompareResult(CompareKind.CONDITIONAL, upto, conditions=sorted_conditions(conds))
    return CompareResult(CompareKind.EQUAL, upto)
