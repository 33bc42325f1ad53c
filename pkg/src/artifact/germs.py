"""Invariant simple germs in normal form: data model, parser and renderer.

The involution changes the sign of x1.  Accepted input is a sum of signed
monomials with unit coefficients, e.g. ``-x1^2 + x2^5 - x3^2 + x4^2``, or the
structured form ``A k=4 eps=+1 eta=-1 p=1 q=2``.

Templates (Q is a sum of +-squares in the remaining variables)::

    A_k  (k>=0)  eta*x1^2 + eps*x2^(k+1) + Q
    B_k  (k>=2)  eps*x1^(2k) + Q
    C_k  (k>=3)  x1^2*x2 + eps*x2^k + Q
    D_k  (k>=4)  eta*x1^2 + x2^2*x3 + eps*x3^(k-1) + Q
    E6           eta*x1^2 + x2^3 + eps*x3^4 + Q
    E7           eta*x1^2 + x2^3 + x2*x3^3 + Q
    E8           eta*x1^2 + x2^3 + x3^5 + Q
    F4           eps*x1^4 + x2^3 + Q

``p`` and ``q`` count every pure square, the acted square eta*x1^2 included.
For A_1 the term eps*x2^2 is itself a square and is not counted in p, q; since
it is interchangeable with the squares of Q the parser takes eps = +1
whenever some non-acted square is positive.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .errors import GermSyntaxError, NonUnitCoefficient, NotATemplate, NotInvariant


class Family(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E6 = "E6"
    E7 = "E7"
    E8 = "E8"
    F4 = "F4"


_FIXED_K = {Family.E6: 6, Family.E7: 7, Family.E8: 8, Family.F4: 4}
_MIN_K = {Family.A: 0, Family.B: 2, Family.C: 3, Family.D: 4}
_ACTED_SQUARE = {Family.A, Family.D, Family.E6, Family.E7, Family.E8}
_EXTRA_VARS = {Family.A: 1, Family.B: 1, Family.C: 2, Family.D: 2,
               Family.E6: 2, Family.E7: 2, Family.E8: 2, Family.F4: 2}
_NO_EPS = {Family.E7, Family.E8}


@dataclass(frozen=True, slots=True)
class GermNormalForm:
    family: Family
    k: int
    eps: int
    acted_sign: int | None
    p: int
    q: int
    n: int

    def __post_init__(self):
        f = self.family
        if f in _FIXED_K and self.k != _FIXED_K[f]:
            raise ValueError(f"{f.value} has fixed index {_FIXED_K[f]}")
        if f in _MIN_K and self.k < _MIN_K[f]:
            raise ValueError(f"{f.value}_k needs k >= {_MIN_K[f]}")
        if self.eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        if f in _NO_EPS and self.eps != 1:
            raise ValueError(f"{f.value} has no sign parameter")
        if f in _ACTED_SQUARE:
            if self.acted_sign not in (1, -1):
                raise ValueError(f"{f.value} needs an acted sign")
            if (self.acted_sign > 0 and self.p < 1) or (self.acted_sign < 0 and self.q < 1):
                raise ValueError("the acted square must be counted in (p, q)")
        elif self.acted_sign is not None:
            raise ValueError(f"{f.value} carries the action on a power variable")
        if self.p < 0 or self.q < 0:
            raise ValueError("negative signature")
        if f is Family.B and self.p + self.q < 1:
            raise ValueError("B_k needs at least one square")
        if f is Family.A and self.k == 1 and self.eps < 0 and self.p - (self.acted_sign > 0) > 0:
            raise ValueError("A_1 with a positive non-acted square is written with eps = +1")
        if self.n != self.p + self.q + _EXTRA_VARS[f]:
            raise ValueError(f"n must be p+q+{_EXTRA_VARS[f]} for {f.value}")

    @property
    def name(self) -> str:
        if self.family in _FIXED_K:
            return self.family.value
        return f"{self.family.value}_{self.k}"

    @property
    def multiplicity(self) -> int:
        return 1 if self.family is Family.A and self.k == 0 else 2

    def full_signature(self) -> tuple[int, int]:
        """Signature of the whole quadratic part (the A_1 power term included)."""
        if self.family is Family.A and self.k == 1:
            return (self.p + (self.eps > 0), self.q + (self.eps < 0))
        return (self.p, self.q)


def make_germ(family, k: int | None = None, eps: int = 1, eta: int | None = None,
              p: int = 0, q: int = 0) -> GermNormalForm:
    """Build a normal form, deriving n and the fixed indices."""
    family = Family(family)
    if k is None:
        k = _FIXED_K.get(family)
        if k is None:
            raise ValueError(f"{family.value} needs an index k")
    n = p + q + _EXTRA_VARS[family]
    return GermNormalForm(family, k, eps, eta if family in _ACTED_SQUARE else None, p, q, n)


# ---------------------------------------------------------------------------
# parsing

_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^x([1-9][0-9]*)(?:\^([0-9]+))?$")
_STRUCT = re.compile(r"^\s*(A|B|C|D|E6|E7|E8|F4)((?:\s+\w+=[+-]?\d+)*)\s*$")


def _parse_monomials(text: str) -> dict[tuple, int]:
    s = text.strip()
    if not s:
        raise GermSyntaxError("empty germ")
    if re.search(r"[+-]\s*$", s) or re.search(r"[+-]\s*[+-]", s):
        raise GermSyntaxError("dangling or doubled sign")
    pos = 0
    terms: Counter = Counter()
    nvars = 0
    for m in _TERM.finditer(s):
        if m.start() != pos:
            raise GermSyntaxError(f"unexpected text at position {pos}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).strip()
        if m.group(1) is None and m.start() != 0:
            raise GermSyntaxError("terms must be separated by + or -")
        powers: Counter = Counter()
        for factor in body.split("*"):
            factor = factor.strip()
            if re.fullmatch(r"[0-9]+", factor):
                raise NonUnitCoefficient(f"numeric coefficient {factor!r}; only +1 and -1 are allowed")
            if re.fullmatch(r"[0-9]+\s*x.*", factor):
                raise NonUnitCoefficient(f"numeric coefficient in {factor!r}")
            fm = _FACTOR.match(factor.replace(" ", ""))
            if not fm:
                raise GermSyntaxError(f"cannot read factor {factor!r}")
            idx = int(fm.group(1))
            exp = int(fm.group(2)) if fm.group(2) is not None else 1
            if exp < 1:
                raise GermSyntaxError(f"exponent of x{idx} must be positive")
            powers[idx] += exp
            nvars = max(nvars, idx)
        key = tuple(sorted(powers.items()))
        terms[key] += sign
    if pos != len(s):
        raise GermSyntaxError(f"unexpected text at position {pos}")
    for key, c in terms.items():
        if c not in (1, -1):
            raise NonUnitCoefficient(f"monomial {_mono_text(key)} has combined coefficient {c}")
    used = {i for key in terms for i, _ in key}
    missing = sorted(set(range(1, nvars + 1)) - used)
    if missing:
        raise GermSyntaxError(f"variables {', '.join('x%d' % i for i in missing)} are unused")
    return dict(terms)


def _mono_text(key) -> str:
    return "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in key)


def parse_germ(text: str) -> GermNormalForm:
    """Parse germ text (monomial or structured form) into its normal form."""
    if _STRUCT.match(text):
        return _parse_structured(text)
    terms = _parse_monomials(text)
    for key in terms:
        if dict(key).get(1, 0) % 2:
            raise NotInvariant(f"monomial {_mono_text(key)} has odd degree in x1")
    return _match_template(terms)


def _parse_structured(text: str) -> GermNormalForm:
    m = _STRUCT.match(text)
    fields = dict(kv.split("=") for kv in m.group(2).split())
    allowed = {"k", "eps", "eta", "p", "q"}
    if set(fields) - allowed:
        raise GermSyntaxError(f"unknown fields {sorted(set(fields) - allowed)}")
    vals = {key: int(v) for key, v in fields.items()}
    try:
        return make_germ(m.group(1), vals.get("k"), vals.get("eps", 1), vals.get("eta"),
                         vals.get("p", 0), vals.get("q", 0))
    except ValueError as exc:
        raise NotATemplate(str(exc)) from None


def _match_template(terms: dict[tuple, int]) -> GermNormalForm:
    n = max(i for key in terms for i, _ in key)
    squares: dict[int, int] = {}
    others: dict[tuple, int] = {}
    x1_terms = []
    for key, c in terms.items():
        d = dict(key)
        if 1 in d:
            x1_terms.append((d, c))
        elif len(d) == 1 and next(iter(d.values())) == 2:
            squares[next(iter(d))] = c
        else:
            others[key] = c
    if len(x1_terms) != 1:
        raise NotATemplate("x1 must appear in exactly one monomial", "A_k")
    d1, c1 = x1_terms[0]
    plus = sum(1 for c in squares.values() if c > 0)
    minus = len(squares) - plus

    def finish(family, k, eps, eta, structural: set[int], extra_plus=0, extra_minus=0):
        # every variable appears exactly once, apart from the structural ones
        seen = Counter()
        for key in terms:
            for i, _ in key:
                seen[i] += 1
        if structural & set(squares):
            raise NotATemplate("a template variable also appears in a square", family)
        for i in range(2, n + 1):
            if i not in structural and seen[i] != 1:
                raise NotATemplate(f"x{i} appears in several monomials", family)
        p = plus + extra_plus
        q = minus + extra_minus
        return make_germ(family, k, eps, eta, p, q)

    def single_var(key):
        return len(key) == 1

    if d1 == {1: 2}:
        eta = c1
        ep, em = (1, 0) if eta > 0 else (0, 1)
        if not others:
            if not squares:
                raise NotATemplate("a lone acted square is not simple in this list", "A_1")
            # A_1: one non-acted square plays the role of eps*x2^2
            eps = 1 if plus else -1
            pl = plus - (eps > 0)
            mi = minus - (eps < 0)
            return make_germ(Family.A, 1, eps, eta, pl + ep, mi + em)
        keys = list(others)
        if len(keys) == 1 and single_var(keys[0]):
            (j, e), = keys[0]
            return finish(Family.A, e - 1, others[keys[0]], eta, {j}, ep, em)
        if len(keys) == 2:
            return _match_two(others, eta, ep, em, finish)
        raise NotATemplate("too many non-square monomials", "D_k")
    if len(d1) == 1 and d1[1] >= 4:
        e = d1[1]
        if not others:
            if not squares:
                raise NotATemplate("B_k needs at least one square", "B_k")
            return finish(Family.B, e // 2, c1, None, set())
        if e == 4 and len(others) == 1:
            (key, c), = others.items()
            if single_var(key) and key[0][1] == 3:
                if c != 1:
                    raise NotATemplate("the cubic term of F4 must have coefficient +1", "F4")
                return finish(Family.F4, 4, c1, None, {key[0][0]})
        raise NotATemplate("unexpected monomials next to a power of x1", "B_k")
    if len(d1) == 2 and d1[1] == 2:
        j = next(i for i in d1 if i != 1)
        if d1[j] != 1:
            raise NotATemplate("x1^2 must multiply a single variable to the first power", "C_k")
        if c1 != 1:
            raise NotATemplate("the monomial x1^2*x_j must have coefficient +1", "C_k")
        if len(others) != 1:
            raise NotATemplate("C_k has exactly one pure power besides the squares", "C_k")
        (key, c), = others.items()
        if not (single_var(key) and key[0][0] == j and key[0][1] >= 3):
            raise NotATemplate("expected a power x_j^k with k >= 3", "C_k")
        return finish(Family.C, key[0][1], c, None, {j})
    raise NotATemplate("unrecognised monomial in x1", "A_k")


def _match_two(others, eta, ep, em, finish) -> GermNormalForm:
    items = list(others.items())
    # D_k: x_j^2*x_l + eps*x_l^(k-1)
    for (key, c), (key2, c2) in (items, items[::-1]):
        d = dict(key)
        if len(d) == 2 and sorted(d.values()) == [1, 2]:
            j = next(i for i, e in d.items() if e == 2)
            l_ = next(i for i, e in d.items() if e == 1)
            if c != 1:
                raise NotATemplate("the monomial x_j^2*x_l must have coefficient +1", "D_k")
            if len(key2) == 1 and key2[0][0] == l_ and key2[0][1] >= 3:
                return finish(Family.D, key2[0][1] + 1, c2, eta, {j, l_}, ep, em)
            raise NotATemplate("expected a power of the linear variable of x_j^2*x_l", "D_k")
        if len(d) == 2 and sorted(d.values()) == [1, 3]:
            # E7: x_j^3 + x_j*x_l^3
            j = next(i for i, e in d.items() if e == 1)
            l_ = next(i for i, e in d.items() if e == 3)
            if len(key2) == 1 and key2[0] == (j, 3):
                if c != 1 or c2 != 1:
                    raise NotATemplate("E7 monomials must have coefficient +1", "E7")
                return finish(Family.E7, 7, 1, eta, {j, l_}, ep, em)
            raise NotATemplate("expected x_j^3 next to x_j*x_l^3", "E7")
    if all(len(key) == 1 for key, _ in items):
        (a, ca), (b, cb) = [(key[0], c) for key, c in items]
        if a[0] == b[0]:
            raise NotATemplate("two powers of the same variable", "E6")
        if (a[1] == 3) == (b[1] == 3):
            raise NotATemplate("expected exactly one cubic power", "E6")
        if b[1] == 3:
            (a, ca), (b, cb) = (b, cb), (a, ca)
        if ca != 1:
            raise NotATemplate("the cubic term must have coefficient +1", "E6")
        if b[1] == 4:
            return finish(Family.E6, 6, cb, eta, {a[0], b[0]}, ep, em)
        if b[1] == 5:
            if cb != 1:
                raise NotATemplate("the quintic term of E8 must have coefficient +1", "E8")
            return finish(Family.E8, 8, 1, eta, {a[0], b[0]}, ep, em)
        raise NotATemplate(f"x^3 next to a power {b[1]} is not a template", "E6")
    raise NotATemplate("two non-square monomials that fit no template", "D_k")


# ---------------------------------------------------------------------------
# rendering

def _signed(c: int, body: str, first: bool) -> str:
    if first:
        return body if c > 0 else f"-{body}"
    return f" + {body}" if c > 0 else f" - {body}"


def _pow(i: int, e: int) -> str:
    return f"x{i}" if e == 1 else f"x{i}^{e}"


def render_germ(nf: GermNormalForm) -> str:
    """Canonical text: template monomials first, then plus squares, then minus squares."""
    f = nf.family
    head: list[tuple[int, str]] = []
    p, q = nf.p, nf.q
    if f in _ACTED_SQUARE:
        head.append((nf.acted_sign, "x1^2"))
        if nf.acted_sign > 0:
            p -= 1
        else:
            q -= 1
    if f is Family.A:
        head.append((nf.eps, _pow(2, nf.k + 1)))
        nxt = 3
    elif f is Family.B:
        head.append((nf.eps, _pow(1, 2 * nf.k)))
        nxt = 2
    elif f is Family.C:
        head += [(1, "x1^2*x2"), (nf.eps, _pow(2, nf.k))]
        nxt = 3
    elif f is Family.D:
        head += [(1, "x2^2*x3"), (nf.eps, _pow(3, nf.k - 1))]
        nxt = 4
    elif f is Family.E6:
        head += [(1, "x2^3"), (nf.eps, "x3^4")]
        nxt = 4
    elif f is Family.E7:
        head += [(1, "x2^3"), (1, "x2*x3^3")]
        nxt = 4
    elif f is Family.E8:
        head += [(1, "x2^3"), (1, "x3^5")]
        nxt = 4
    else:
        head += [(nf.eps, "x1^4"), (1, "x2^3")]
        nxt = 3
    for _ in range(p):
        head.append((1, f"x{nxt}^2"))
        nxt += 1
    for _ in range(q):
        head.append((-1, f"x{nxt}^2"))
        nxt += 1
    return "".join(_signed(c, body, i == 0) for i, (c, body) in enumerate(head))


def render_structured(nf: GermNormalForm) -> str:
    parts = [nf.family.value]
    if nf.family not in _FIXED_K:
        parts.append(f"k={nf.k}")
    if nf.family not in _NO_EPS:
        parts.append(f"eps={nf.eps:+d}")
    if nf.acted_sign is not None:
        parts.append(f"eta={nf.acted_sign:+d}")
    parts += [f"p={nf.p}", f"q={nf.q}"]
    return " ".join(parts)


# ---------------------------------------------------------------------------
# routing

class PairRoute(str, Enum):
    SAME = "SameNormalForm"
    WITHIN = "WithinFamily"
    CROSS_AB = "CrossAB"
    CROSS_CD = "CrossCD"
    CROSS_EF = "CrossEF"
    CROSS_DISTINCT = "CrossDistinct"
    OUT_OF_SCOPE = "OutOfScope"


def underlying_type(g: GermNormalForm) -> tuple:
    """Type of the germ once the involution is forgotten.

    B_k is an A_{2k-1} singularity, C_k a D_{k+1}, F4 an E6.  The sign of the
    power term is an invariant except for A_k with k even, where x2 -> -x2
    absorbs it, and for A_1 and A_0 where it is part of a quadratic or
    linear term.
    """
    f = g.family
    if f is Family.A:
        idx = g.k
        sign = g.eps if idx % 2 and idx >= 3 else None
        return ("A", idx, sign)
    if f is Family.B:
        return ("A", 2 * g.k - 1, g.eps)
    if f is Family.C:
        return ("D", g.k + 1, g.eps)
    if f is Family.D:
        return ("D", g.k, g.eps)
    if f in (Family.E6, Family.F4):
        return ("E6", g.eps)
    return (f.value,)


def pair_route(g1: GermNormalForm, g2: GermNormalForm) -> PairRoute:
    if g1 == g2:
        return PairRoute.SAME
    if (g1.n != g2.n or g1.full_signature() != g2.full_signature()
            or underlying_type(g1) != underlying_type(g2)):
        return PairRoute.CROSS_DISTINCT
    fams = {g1.family, g2.family}
    if len(fams) == 1:
        if fams & {Family.E7, Family.E8}:
            return PairRoute.OUT_OF_SCOPE
        return PairRoute.WITHIN
    if fams == {Family.A, Family.B}:
        return PairRoute.CROSS_AB
    if fams == {Family.C, Family.D}:
        return PairRoute.CROSS_CD
    if fams == {Family.E6, Family.F4}:
        return PairRoute.CROSS_EF
    raise AssertionError(f"unexpected family pair {sorted(f.value for f in fams)}")
