import io
import json

import pytest

from artifact.cli import main
from artifact.germs import parse_germ


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv, text", [
    (["beta", "Y", "1", "1", "--action", "trivial"], "(2u^2-u)/(u-1)"),
    (["beta", "cusp-fiber", "2", "+1"], "u^2/(u-1)"),
    (["beta", "Yfiber", "1", "0", "+1", "--action", "flip-plus"], "1"),
    (["beta", "sphere", "1", "--fixed"], "(u^2+u)/(u-1)"),
    (["beta", "curve-zero", "1", "-1", "--flip-x"], "(2u^2-2u+1)/(u-1)"),
    (["beta", "diag-zero", "4", "0", "0", "+1", "--action", "trivial"], "u/(u-1)"),
])
def test_beta(argv, text):
    code, out = run(*argv)
    assert code == 0
    assert out.split()[0] == text


def test_beta_json():
    code, out = run("beta", "Y", "1", "1", "--action", "flip-plus", "--json")
    obj = json.loads(out)
    assert obj["value"] == "(u^2-u+1)/(u-1)" and obj["command"] == "beta"


def test_zeta():
    code, out = run("zeta", "x1^2+x2^4+x3^2", "--channel", "naive", "--order", "2", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["coefficients"]["2"] == "(u+1)/u"
    assert obj["coefficients"]["1"] == "0"
    assert obj["tail"]["kind"] == "Unknown"


def test_zeta_first_coefficient():
    code, out = run("zeta", "x1^2+x2^3+x3^2", "--channel", "naive")
    assert code == 0 and "T^1: 0" in out


def test_zeta_beyond_range():
    code, out = run("zeta", "x1^2+x2^4+x3^2", "--order", "9")
    assert code == 2


def test_zeta_with_partner_tail():
    code, out = run("zeta", "x2^4 + x1^2 + x3^2", "--partner", "x1^4 + x2^2 + x3^2", "--json")
    assert json.loads(out)["tail"]["kind"] == "EqualByRule"


def test_compare_json_schema():
    code, out = run("compare", "x2^4 + x1^2 - x3^2", "x1^4 + x2^2 - x3^2", "--json")
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"command", "inputs", "verdict", "witness", "conditions", "provenance"}
    assert obj["verdict"] == "Distinct"
    assert set(obj["witness"]) == {"channel", "m", "lhs", "rhs"}
    assert obj["witness"]["channel"] == "naive" and obj["witness"]["m"] == 2
    assert [parse_germ(t) for t in obj["inputs"]] == [parse_germ("x2^4 + x1^2 - x3^2"), parse_germ("x1^4 + x2^2 - x3^2")]


def test_compare_same():
    code, out = run("compare", "x1^2+x2^4", "x1^2 + x2^4")
    assert code == 0 and "SameNormalForm" in out


def test_compare_conditional_lists_atoms():
    code, out = run("compare", "E6 eps=-1 eta=+1 p=3 q=0", "F4 eps=-1 p=3 q=0", "--json")
    obj = json.loads(out)
    assert obj["verdict"] == "Conditional" and len(obj["conditions"]) == 6


def test_table_streams_lines():
    code, out = run("table", "--families", "AB", "--kmax", "3", "--pqmax", "4", "--json")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows and all(r["agrees"] for r in rows)
    code2, out2 = run("table", "--families", "AB", "--kmax", "3", "--pqmax", "4", "--json")
    assert out2 == out


def test_table_mismatch_exit_code(monkeypatch):
    from artifact import classify

    real = classify.theorem_verdict
    monkeypatch.setattr(classify, "theorem_verdict",
                        lambda a, b: classify.Verdict(classify.VerdictKind.OUT_OF_SCOPE) if a != b else real(a, b))
    code, _ = run("table", "--families", "EF", "--pqmax", "2")
    assert code == 3


@pytest.mark.parametrize("argv", [
    ["zeta", "x1^3 + x2^2"],
    ["beta", "Y", "1"],
    ["beta", "Y", "1", "1"],
    ["frobnicate"],
    ["compare", "x1^2 + x2^4"],
])
def test_usage_errors(argv):
    code, _ = run(*argv)
    assert code == 1
