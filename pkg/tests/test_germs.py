import random

import pytest

from artifact.errors import GermSyntaxError, NonUnitCoefficient, NotATemplate, NotInvariant
from artifact.germs import (
    Family, GermNormalForm, PairRoute, make_germ, pair_route, parse_germ, render_germ,
    render_structured, underlying_type,
)


def all_germs(kmax=8, pqmax=5):
    for fam in Family:
        ks = range(0, kmax + 1) if fam in (Family.A, Family.B, Family.C, Family.D) else [None]
        for k in ks:
            for p in range(pqmax + 1):
                for q in range(pqmax + 1 - p):
                    for eps in (1, -1):
                        for eta in (1, -1, None):
                            try:
                                yield make_germ(fam, k, eps, eta, p=p, q=q)
                            except ValueError:
                                pass


@pytest.mark.parametrize("text, expected", [
    ("-x1^2 + x2^5 - x3^2 + x4^2", GermNormalForm(Family.A, 4, 1, -1, 1, 2, 4)),
    ("x1^2*x2 - x2^3 + x3^2", GermNormalForm(Family.C, 3, -1, None, 1, 0, 3)),
    ("x1^4 + x2^3 + x3^2", GermNormalForm(Family.F4, 4, 1, None, 1, 0, 3)),
])
def test_parse_examples(text, expected):
    assert parse_germ(text) == expected


def test_render_example():
    assert render_germ(make_germ("A", 2, 1, 1, p=2, q=0)) == "x1^2 + x2^3 + x3^2"


@pytest.mark.parametrize("text, exc", [
    ("x1^3 + x2^2", NotInvariant),
    ("2*x1^2 + x2^4", NonUnitCoefficient),
    ("x1^2 + x2^4 + x4^2", GermSyntaxError),
    ("x1^2 + y^4", GermSyntaxError),
    ("x1^2*x2^2 + x2^6", NotATemplate),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_germ(text)


def test_round_trip_over_template_grid():
    count = 0
    for g in all_germs():
        assert parse_germ(render_germ(g)) == g
        assert parse_germ(render_structured(g)) == g
        count += 1
    assert count > 1000


def test_parse_ignores_order_of_unpinned_variables():
    rng = random.Random(7)
    for g in list(all_germs(5, 4))[::7]:
        text = render_germ(g)
        terms = text.replace("- ", "+ -").split("+ ")
        terms = [t.strip() for t in terms if t.strip()]
        rng.shuffle(terms)
        assert parse_germ(" + ".join(terms).replace("+ -", "- ")) == g


def test_invalid_normal_forms():
    with pytest.raises(ValueError):
        make_germ("B", 1, p=1)
    with pytest.raises(ValueError):
        make_germ("A", 3, 1, 1, p=0, q=2)
    with pytest.raises(ValueError):
        make_germ("A", 1, -1, 1, p=2, q=0)


def test_underlying_types():
    assert underlying_type(make_germ("B", 2, 1, p=1, q=1)) == ("A", 3, 1)
    assert underlying_type(make_germ("C", 4, -1, p=1)) == ("D", 5, -1)
    assert underlying_type(make_germ("F4", None, 1, p=1)) == ("E6", 1)


def test_routes():
    a3 = make_germ("A", 3, 1, 1, p=2, q=1)
    b2 = make_germ("B", 2, 1, p=2, q=1)
    b3 = make_germ("B", 3, 1, p=2, q=1)
    assert pair_route(a3, a3) is PairRoute.SAME
    assert pair_route(a3, b2) is PairRoute.CROSS_AB
    assert pair_route(a3, b3) is PairRoute.CROSS_DISTINCT
    e7a = make_germ("E7", None, 1, 1, p=2, q=1)
    e7b = make_germ("E7", None, 1, -1, p=2, q=1)
    assert pair_route(e7a, e7b) is PairRoute.OUT_OF_SCOPE
    assert pair_route(make_germ("D", 5, 1, 1, p=1, q=1), make_germ("C", 4, 1, p=1, q=1)) is PairRoute.CROSS_CD
    assert pair_route(make_germ("E6", None, 1, 1, p=1), make_germ("F4", None, 1, p=1)) is PairRoute.CROSS_EF
