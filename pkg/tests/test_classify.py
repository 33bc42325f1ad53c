import pytest

from artifact import classify
from artifact.classify import (
    VerdictKind, classify_table, compare, grid_germs, iter_table, theorem_verdict,
)
from artifact.errors import DualPathMismatch
from artifact.germs import make_germ, parse_germ
from artifact.qring import CONDITION_TEMPLATES, Channel, U, AtomTemplate

P = parse_germ


def test_dominant_same_sign_is_zeta_equal():
    v = compare(P("x2^4 + x1^2 + x3^2"), P("x1^4 + x2^2 + x3^2"))
    assert v.kind is VerdictKind.ZETA_EQUAL


def test_acted_square_on_small_side_is_distinct():
    v = compare(P("x2^4 + x1^2 - x3^2"), P("x1^4 + x2^2 - x3^2"))
    assert v.kind is VerdictKind.DISTINCT
    w = v.witness
    assert (w.channel, w.m) == (Channel.NAIVE, 2)
    # raw zero-set coefficients u^4 Y_{1,1}: flip-plus against trivial
    n = 3
    lift = U**n * U**(n + 1) / (U - 1)
    assert w.lhs.rat == (lift - U**4 * (U**2 - U + 1) / (U - 1)) / U**6
    assert w.rhs.rat == (lift - U**4 * (2 * U**2 - U) / (U - 1)) / U**6


def test_curve_residual_pair_is_distinct_at_three():
    v = compare(P("x2^2*x3 - x3^3 + x1^2 + x4^2 + x5^2"), P("x1^2*x2 - x2^3 + x3^2 + x4^2 + x5^2"))
    assert v.kind is VerdictKind.DISTINCT
    assert (v.witness.channel, v.witness.m) == (Channel.NAIVE, 3)


def test_e6_f4_opposite_signs_conditions():
    phi = make_germ("E6", None, -1, 1, p=3, q=0)
    omega = make_germ("F4", None, -1, p=3, q=0)
    v = compare(phi, omega)
    assert v.kind is VerdictKind.CONDITIONAL
    templates = {a.template for c in v.conditions for a in c.atoms()}
    assert templates == {AtomTemplate.CUBIC_MIXED, AtomTemplate.EVEN_MIXED, AtomTemplate.QUARTIC_CUBIC_MIXED}
    assert len(v.conditions) == 6


def test_e6_f4_same_signs_drop_the_quartic_condition():
    v = compare(make_germ("E6", None, 1, 1, p=3), make_germ("F4", None, 1, p=3))
    assert v.kind is VerdictKind.CONDITIONAL
    assert AtomTemplate.EVEN_MIXED not in {a.template for c in v.conditions for a in c.atoms()}
    assert len(v.conditions) == 4


def test_clause_examples():
    assert theorem_verdict(make_germ("A", 3, 1, 1, p=2, q=1), make_germ("B", 2, 1, p=2, q=1)).kind is VerdictKind.DISTINCT
    assert theorem_verdict(make_germ("A", 5, -1, 1, p=3, q=0), make_germ("B", 3, -1, p=3, q=0)).kind is VerdictKind.DISTINCT
    assert theorem_verdict(make_germ("D", 5, 1, 1, p=3, q=0), make_germ("C", 4, 1, p=3, q=0)).kind is VerdictKind.ZETA_EQUAL


def test_within_family():
    a = make_germ("A", 4, 1, 1, p=2, q=1)
    assert compare(a, make_germ("A", 4, -1, 1, p=2, q=1)).kind is VerdictKind.EQUIVALENT
    d = compare(a, make_germ("A", 4, 1, -1, p=2, q=1))
    assert d.kind is VerdictKind.DISTINCT and d.witness.channel is Channel.NAIVE
    # balanced signature: the naive coefficients agree and the Plus channel decides
    e = compare(make_germ("D", 5, 1, 1, p=2, q=2), make_germ("D", 5, 1, -1, p=2, q=2))
    assert e.kind is VerdictKind.DISTINCT and e.witness.channel is Channel.PLUS and e.witness.m == 2
    z = compare(make_germ("A", 0, 1, 1, p=1, q=1), make_germ("A", 0, 1, -1, p=1, q=1))
    assert z.kind is VerdictKind.ZETA_EQUAL
    o = compare(make_germ("E7", None, 1, 1, p=1, q=1), make_germ("E7", None, 1, -1, p=1, q=1))
    assert o.kind is VerdictKind.OUT_OF_SCOPE


def test_cross_distinct_needs_no_computation():
    v = compare(make_germ("A", 3, 1, 1, p=2, q=1), make_germ("B", 3, 1, p=2, q=1))
    assert v.kind is VerdictKind.DISTINCT and v.witness is None
    assert "non-equivariant" in v.reason


def test_symmetry_and_diagonal():
    for row in iter_table(["AB", "CD", "EF"], 3, 3):
        back = compare(row.g2, row.g1)
        assert back.kind is row.verdict.kind
        if row.verdict.witness is not None:
            assert back.witness == row.verdict.witness.mirrored()
        assert back.conditions == row.verdict.conditions
        if row.g1 == row.g2:
            assert row.verdict.kind is VerdictKind.SAME


def test_conditions_use_catalogue_templates():
    for row in iter_table(["AB", "CD", "EF"], 4, 4):
        for c in row.verdict.conditions:
            assert all(a.template in CONDITION_TEMPLATES for a in c.atoms())


def test_grid_germs():
    gs = grid_germs(["AB"], 2, 2)
    assert {g.family.value for g in gs} == {"A", "B"}
    assert max(g.k for g in gs if g.family.value == "A") == 3


def test_mismatch_is_reported(monkeypatch):
    real = classify.theorem_verdict

    def wrong(g1, g2):
        v = real(g1, g2)
        if v.kind is VerdictKind.ZETA_EQUAL:
            return classify.Verdict(VerdictKind.DISTINCT)
        return v

    monkeypatch.setattr(classify, "theorem_verdict", wrong)
    with pytest.raises(DualPathMismatch):
        classify_table(["AB"], 2, 3)
