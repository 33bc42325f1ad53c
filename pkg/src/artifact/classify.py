"""Pairwise distinguishability of invariant normal forms.

Two independent paths produce a verdict for a pair of germs:

* :func:`compare` computes truncated zeta functions and looks for the first
  coefficient that differs without any unresolved atom.  Equal windows are
  then closed off by the tail rules attached by :mod:`arccoef`.
* :func:`theorem_verdict` reads the answer off the clause tables of the
  classification results, without computing a single coefficient.

:func:`classify_table` runs both over a grid and insists that they agree.
Differing coefficients prove non-equivalence; equal zeta functions prove
nothing, which is why the cross-family verdict is ZetaEqual and never
Equivalent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

from .arccoef import (
    channel_coeff, cross_members, default_order, dominant, fiber_conditions, pair_degree,
    zeta_truncated,
)
from .errors import DualPathMismatch, IncomparableTails, NoClause
from .germs import Family, GermNormalForm, PairRoute, make_germ, pair_route, underlying_type
from .qring import Channel, CompareKind, SeriesValue, series_compare, sorted_conditions

CHANNELS = (Channel.NAIVE, Channel.PLUS, Channel.MINUS)


class VerdictKind(str, Enum):
    SAME = "SameNormalForm"
    EQUIVALENT = "Equivalent"
    DISTINCT = "Distinct"
    ZETA_EQUAL = "ZetaEqual"
    CONDITIONAL = "Conditional"
    OUT_OF_SCOPE = "OutOfPaperScope"


@dataclass(frozen=True)
class Witness:
    channel: Channel
    m: int
    lhs: SeriesValue
    rhs: SeriesValue

    def mirrored(self) -> "Witness":
        return Witness(self.channel, self.m, self.rhs, self.lhs)


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    reason: str = ""
    witness: Witness | None = None
    rule: str | None = None
    conditions: tuple = ()
    provenance: tuple = field(default=())

    def __str__(self) -> str:
        out = self.kind.value
        if self.witness is not None:
            w = self.witness
            out += f" at {w.channel.value} T^{w.m}: {w.lhs} vs {w.rhs}"
        elif self.reason:
            out += f" ({self.reason})"
        if self.conditions:
            out += " iff " + "; ".join(str(c) for c in self.conditions)
        return out


def _sign_of(g: GermNormalForm) -> str:
    return "" if g.acted_sign is None else ("+" if g.acted_sign > 0 else "-")


# ---------------------------------------------------------------------------
# coefficient path

def _witness(g1: GermNormalForm, g2: GermNormalForm, upto: int) -> Witness | None:
    """Smallest degree, Naive first, where the coefficients differ with no atoms involved."""
    for m in range(1, upto + 1):
        for ch in CHANNELS:
            a, b = channel_coeff(g1, m, ch), channel_coeff(g2, m, ch)
            if a.is_atom_free() and b.is_atom_free() and a != b:
                return Witness(ch, m, a, b)
    return None


def _verified(g1: GermNormalForm, g2: GermNormalForm, w: Witness) -> Witness:
    a, b = channel_coeff(g1, w.m, w.channel), channel_coeff(g2, w.m, w.channel)
    if a != w.lhs or b != w.rhs or a == b or not (a.is_atom_free() and b.is_atom_free()):
        raise AssertionError(f"witness at {w.channel.value} T^{w.m} does not survive re-evaluation")
    return w


def _within(g1: GermNormalForm, g2: GermNormalForm) -> Verdict:
    prov = ("gate-identity", "gate-non-equivariant-invariants")
    if g1.family is Family.A and g1.k == 0:
        if g1.acted_sign != g2.acted_sign:
            # both arc spaces are affine spaces of the same dimension
            order = default_order(g1)
            for m in range(1, order + 1):
                for ch in CHANNELS:
                    if channel_coeff(g1, m, ch) != channel_coeff(g2, m, ch):
                        raise AssertionError("affine arc spaces disagree")
            return Verdict(VerdictKind.ZETA_EQUAL, "arc spaces are affine spaces",
                           rule="a0-affine-arcs", provenance=prov + ("within-a0-affine",))
        return Verdict(VerdictKind.EQUIVALENT, "the linear term absorbs the sign",
                       provenance=prov + ("within-a0-linear",))
    if g1.acted_sign == g2.acted_sign:
        if g1.family is Family.A and g1.k % 2 == 0:
            return Verdict(VerdictKind.EQUIVALENT, "an even power absorbs the sign by an invariant change of variables",
                           provenance=prov + ("within-even-a-sign",))
        raise NoClause(f"{g1.name} pair differs in no recognised parameter")
    w = _witness(g1, g2, 2)
    if w is None:
        raise AssertionError(f"no degree-two witness for {g1.name}")
    return Verdict(VerdictKind.DISTINCT, witness=_verified(g1, g2, w),
                   provenance=prov + ("within-acted-sign-degree-two",))


def _cross(g1: GermNormalForm, g2: GermNormalForm, route: PairRoute) -> Verdict:
    prov = ("gate-identity", "gate-non-equivariant-invariants", f"cross-{route.value}")
    kk = pair_degree(g1)
    w = _witness(g1, g2, kk)
    if w is not None:
        return Verdict(VerdictKind.DISTINCT, witness=_verified(g1, g2, w), provenance=prov + ("first-difference",))
    conds = []
    rules = set()
    for ch in CHANNELS:
        z1 = zeta_truncated(g1, ch, kk, partner=g2)
        z2 = zeta_truncated(g2, ch, kk, partner=g1)
        try:
            res = series_compare(z1, z2)
        except IncomparableTails as exc:
            return Verdict(VerdictKind.OUT_OF_SCOPE, f"undecided: {exc}", provenance=prov + ("tail-unknown",))
        if res.kind is CompareKind.FIRST_DIFFERENCE:
            # only reachable when the differing coefficients carry atoms
            return Verdict(VerdictKind.OUT_OF_SCOPE, "undecided: difference involves unresolved atoms",
                           provenance=prov + ("atom-difference",))
        conds.extend(res.conditions)
        rules.add(z1.tail.rule)
    rule = "+".join(sorted(rules))
    prov = prov + tuple(sorted(rules))
    if conds:
        return Verdict(VerdictKind.CONDITIONAL, rule=rule, conditions=sorted_conditions(conds), provenance=prov)
    return Verdict(VerdictKind.ZETA_EQUAL, rule=rule, provenance=prov)


def compare(g1: GermNormalForm, g2: GermNormalForm) -> Verdict:
    """Verdict for a pair by explicit coefficient comparison."""
    route = pair_route(g1, g2)
    if route is PairRoute.SAME:
        return Verdict(VerdictKind.SAME, provenance=("gate-identity",))
    if route is PairRoute.CROSS_DISTINCT:
        return Verdict(VerdictKind.DISTINCT, _invariant_reason(g1, g2),
                       provenance=("gate-identity", "gate-non-equivariant-invariants"))
    if route is PairRoute.OUT_OF_SCOPE:
        return Verdict(VerdictKind.OUT_OF_SCOPE, f"no zeta function computation for {g1.name}",
                       provenance=("gate-identity", "gate-non-equivariant-invariants", "e7-e8-scope"))
    if route is PairRoute.WITHIN:
        return _within(g1, g2)
    return _cross(g1, g2, route)


def _invariant_reason(g1: GermNormalForm, g2: GermNormalForm) -> str:
    if g1.n != g2.n:
        return f"non-equivariant invariant: {g1.n} vs {g2.n} variables"
    if g1.full_signature() != g2.full_signature():
        return f"non-equivariant invariant: quadratic part {g1.full_signature()} vs {g2.full_signature()}"
    return f"non-equivariant invariant: type {underlying_type(g1)} vs {underlying_type(g2)}"


# ---------------------------------------------------------------------------
# clause tables

def _expected_conditions(g1: GermNormalForm, g2: GermNormalForm) -> tuple:
    route, acted, power, kk = cross_members(g1, g2)
    conds = []
    for xi in (1, -1):
        conds.extend(fiber_conditions(route, acted, power, kk, xi))
    return sorted_conditions(conds)


def _cross_clause(route: PairRoute, acted: GermNormalForm, kk: int) -> tuple[VerdictKind, str]:
    p, q, eta, eps = acted.p, acted.q, acted.acted_sign, acted.eps
    tag = {PairRoute.CROSS_AB: "ab", PairRoute.CROSS_CD: "cd", PairRoute.CROSS_EF: "ef"}[route]
    if (p <= q and eta > 0) or (q <= p and eta < 0):
        return VerdictKind.DISTINCT, f"{tag}-acted-square-on-smaller-side"
    if abs(p - q) == 1:
        return VerdictKind.DISTINCT, f"{tag}-adjacent-signature"
    if not dominant(p, q, eta):
        raise NoClause(f"no clause for {route.value} with signature ({p},{q})")
    if route is PairRoute.CROSS_AB:
        if eps == eta:
            return VerdictKind.ZETA_EQUAL, "ab-dominant-same-sign"
        if kk % 2:
            return VerdictKind.DISTINCT, "ab-odd-opposite-sign"
        return VerdictKind.CONDITIONAL, "ab-even-opposite-sign"
    if route is PairRoute.CROSS_CD:
        if kk % 2:
            if eps < 0:
                return VerdictKind.DISTINCT, "cd-odd-negative-power"
            return VerdictKind.CONDITIONAL, "cd-odd-positive-power"
        if eps == eta:
            return VerdictKind.ZETA_EQUAL, "cd-even-same-sign"
        return VerdictKind.CONDITIONAL, "cd-even-opposite-sign"
    return VerdictKind.CONDITIONAL, "ef-dominant"


def theorem_verdict(g1: GermNormalForm, g2: GermNormalForm) -> Verdict:
    """Verdict read off the clause tables; no coefficient is computed."""
    route = pair_route(g1, g2)
    if route is PairRoute.SAME:
        return Verdict(VerdictKind.SAME, rule="identity")
    if route is PairRoute.CROSS_DISTINCT:
        return Verdict(VerdictKind.DISTINCT, _invariant_reason(g1, g2), rule="non-equivariant-invariant")
    if route is PairRoute.OUT_OF_SCOPE:
        return Verdict(VerdictKind.OUT_OF_SCOPE, "E7/E8 pairs are not treated", rule="e7-e8-scope")
    if route is PairRoute.WITHIN:
        if g1.family is Family.A and g1.k == 0:
            if g1.acted_sign != g2.acted_sign:
                return Verdict(VerdictKind.ZETA_EQUAL, rule="within-a0-affine")
            return Verdict(VerdictKind.EQUIVALENT, rule="within-a0-linear")
        if g1.acted_sign != g2.acted_sign:
            return Verdict(VerdictKind.DISTINCT, rule="within-acted-sign-degree-two")
        if g1.family is Family.A and g1.k % 2 == 0:
            return Verdict(VerdictKind.EQUIVALENT, rule="within-even-a-sign")
        raise NoClause(f"no within-family clause for {g1.name}")
    _, acted, _, kk = cross_members(g1, g2)
    kind, rule = _cross_clause(route, acted, kk)
    conds = _expected_conditions(g1, g2) if kind is VerdictKind.CONDITIONAL else ()
    return Verdict(kind, rule=rule, conditions=conds, provenance=(rule,))


# ---------------------------------------------------------------------------
# tables

GROUPS = {
    "AB": (Family.A, Family.B),
    "CD": (Family.C, Family.D),
    "EF": (Family.E6, Family.F4),
    "E78": (Family.E7, Family.E8),
}


def grid_germs(families: Iterable[str], k_max: int, pq_max: int) -> list[GermNormalForm]:
    """Every valid normal form of the families with pair index <= k_max and p+q <= pq_max.

    For A/B the index is that of B_k (so A runs up to 2*k_max - 1); for C/D it
    is that of C_k (so D runs up to k_max + 1).
    """
    fams: list[Family] = []
    for name in families:
        key = name.upper()
        fams.extend(GROUPS[key] if key in GROUPS else (Family(key),))
    ranges = {
        Family.A: range(0, 2 * k_max), Family.B: range(2, k_max + 1),
        Family.C: range(3, k_max + 1), Family.D: range(4, k_max + 2),
    }
    out = []
    for fam in dict.fromkeys(fams):
        for k in ranges.get(fam, (None,)):
            for p in range(pq_max + 1):
                for q in range(pq_max + 1 - p):
                    for eps in (1, -1):
                        for eta in (1, -1, None):
                            try:
                                out.append(make_germ(fam, k, eps, eta, p=p, q=q))
                            except ValueError:
                                pass
    return list(dict.fromkeys(out))


@dataclass(frozen=True)
class TableRow:
    g1: GermNormalForm
    g2: GermNormalForm
    verdict: Verdict
    expected: Verdict

    @property
    def agrees(self) -> bool:
        return (self.verdict.kind is self.expected.kind
                and tuple(self.verdict.conditions) == tuple(self.expected.conditions))


def iter_table(families: Iterable[str], k_max: int, pq_max: int) -> Iterator[TableRow]:
    """Both verdicts for every pair that shares the non-equivariant invariants, diagonal included."""
    germs = grid_germs(families, k_max, pq_max)
    buckets: dict[tuple, list[GermNormalForm]] = {}
    for g in germs:
        buckets.setdefault((g.n, g.full_signature(), underlying_type(g)), []).append(g)
    for key in sorted(buckets, key=repr):
        gs = buckets[key]
        for i, g1 in enumerate(gs):
            for g2 in gs[i:]:
                yield TableRow(g1, g2, compare(g1, g2), theorem_verdict(g1, g2))


def classify_table(families: Iterable[str], k_max: int, pq_max: int) -> list[TableRow]:
    """The whole grid; raises DualPathMismatch if the two paths ever disagree."""
    rows = []
    for row in iter_table(families, k_max, pq_max):
        if not row.agrees:
            raise DualPathMismatch(
                f"{row.g1.name}{_sign_of(row.g1)} vs {row.g2.name}{_sign_of(row.g2)}: "
                f"compare gives {row.verdict}, clause table gives {row.expected}")
        rows.append(row)
    return rows
