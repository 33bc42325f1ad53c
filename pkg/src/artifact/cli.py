"""Command-line front end.

    artifact beta Y 1 1 --action trivial
    artifact zeta "x1^2+x2^4+x3^2" --channel naive --order 2
    artifact compare "x2^4 + x1^2 + x3^2" "x1^4 + x2^2 + x3^2" --json
    artifact table --families AB --kmax 3 --pqmax 4

Exit codes: 0 success, 1 usage or parse error, 2 range error, 3 the two
classification paths disagree.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import arccoef, grim
from .classify import Verdict, compare, iter_table
from .errors import ArtifactError, DualPathMismatch, OutOfRange
from .germs import parse_germ, render_germ
from .grim import Flip, GAction
from .qring import Channel, SeriesValue

EXIT_OK, EXIT_USAGE, EXIT_RANGE, EXIT_MISMATCH = 0, 1, 2, 3

_ACTIONS = {a.value: a for a in GAction}
_FLIPS = {f.value: f for f in Flip}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _sign(text: str) -> int:
    if text in ("+1", "1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise argparse.ArgumentTypeError(f"expected +1 or -1, got {text!r}")


def _atoms(v: SeriesValue) -> list[str]:
    return [a.key() for a, _ in v.atoms]


def _emit(obj: dict, as_json: bool, text: str, out) -> None:
    if as_json:
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


# ---------------------------------------------------------------------------
# beta

def _beta(args) -> tuple[object, str]:
    what = args.set
    a = args.args

    def need(k):
        if len(a) != k:
            raise UsageError(f"beta {what} takes {k} arguments, got {len(a)}")

    def action():
        if args.action is None:
            raise UsageError(f"beta {what} needs --action")
        return args.action

    if what == "Y":
        need(2)
        act = _ACTIONS[action()]
        return grim.beta_Y((int(a[0]), int(a[1])), act), "quadric-cone"
    if what == "Yfiber":
        need(3)
        act = _ACTIONS[action()]
        return grim.beta_Y_fiber((int(a[0]), int(a[1])), _sign(a[2]), act), "quadric-level-set"
    if what == "sphere":
        need(1)
        return grim.beta_sphere(int(a[0]), args.fixed), "sphere-leaf"
    if what == "curve-zero":
        need(2)
        return grim.beta_curve_zero(int(a[0]), _sign(a[1]), args.flip_x), "plane-curve-zero"
    if what == "cusp-fiber":
        need(2)
        return grim.beta_cusp_fiber(int(a[0]), _sign(a[1]), args.flip_x), "cusp-level-set"
    if what == "diag-zero":
        need(4)
        name = action()
        act = _FLIPS.get(name) or (_ACTIONS[name] if name in _ACTIONS else None)
        if act is None:
            raise UsageError(f"unknown action {name!r}")
        return grim.beta_diagonal_zero(int(a[0]), (int(a[1]), int(a[2])), _sign(a[3]), act), "diagonal-zero-set"
    raise UsageError(f"unknown set {what!r}")


def cmd_beta(args, out) -> int:
    value, clause = _beta(args)
    inputs = [args.set, *args.args]
    obj = {"command": "beta", "inputs": inputs, "value": str(value), "provenance": [clause]}
    _emit(obj, args.json, f"{value}    [{clause}]", out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# zeta

def cmd_zeta(args, out) -> int:
    g = parse_germ(args.germ)
    partner = parse_germ(args.partner) if args.partner else None
    ch = Channel(args.channel)
    z = arccoef.zeta_truncated(g, ch, args.order, partner=partner)
    coeffs = {str(m): str(z.coeff(m)) for m in range(1, z.valid_to + 1)}
    atoms = sorted({k for m in range(1, z.valid_to + 1) for k in _atoms(z.coeff(m))})
    obj = {
        "command": "zeta", "inputs": [render_germ(g)] + ([render_germ(partner)] if partner else []),
        "channel": ch.value, "n": z.n, "valid_to": z.valid_to, "coefficients": coeffs,
        "atoms": atoms, "tail": {"kind": z.tail.kind.value, "rule": z.tail.rule,
                                 "conditions": [str(c) for c in z.tail.conditions]},
        "provenance": [f"{g.family.value.lower()}-arc-coefficients"],
    }
    lines = [f"{render_germ(g)}  ({g.name}, n={g.n}, channel {ch.value})"]
    lines += [f"  T^{m}: {z.coeff(m)}" for m in range(1, z.valid_to + 1)]
    lines.append(f"  tail: {z.tail}")
    _emit(obj, args.json, "\n".join(lines), out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# compare and table

def verdict_report(command: str, g1, g2, v: Verdict) -> dict:
    w = v.witness
    return {
        "command": command,
        "inputs": [render_germ(g1), render_germ(g2)],
        "verdict": v.kind.value,
        "witness": None if w is None else {"channel": w.channel.value, "m": w.m,
                                           "lhs": str(w.lhs), "rhs": str(w.rhs)},
        "conditions": [[a.key() for a in c.atoms()] for c in v.conditions],
        "provenance": list(v.provenance),
    }


def cmd_compare(args, out) -> int:
    g1, g2 = parse_germ(args.germ1), parse_germ(args.germ2)
    v = compare(g1, g2)
    text = f"{render_germ(g1)}  vs  {render_germ(g2)}\n  {v.kind.value}"
    if v.witness is not None:
        w = v.witness
        text += f" at channel {w.channel.value}, T^{w.m}\n    lhs: {w.lhs}\n    rhs: {w.rhs}"
    elif v.reason:
        text += f": {v.reason}"
    for c in v.conditions:
        text += f"\n    iff {c}"
    _emit(verdict_report("compare", g1, g2, v), args.json, text, out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    bad = 0
    for row in iter_table(args.families, args.kmax, args.pqmax):
        obj = verdict_report("table", row.g1, row.g2, row.verdict)
        obj["expected"] = row.expected.kind.value
        obj["agrees"] = row.agrees
        if not row.agrees:
            bad += 1
        mark = "" if row.agrees else "   MISMATCH: clause table says " + row.expected.kind.value
        text = f"{row.g1.name} {render_germ(row.g1)}  |  {row.g2.name} {render_germ(row.g2)}  ->  {row.verdict.kind.value}{mark}"
        _emit(obj, args.json, text, out)
    if bad:
        raise DualPathMismatch(f"{bad} pairs disagree with the clause tables")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="artifact", description="Equivariant Poincare series, zeta functions and classification of invariant germs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("beta", help="value of a catalogue set")
    b.add_argument("set", choices=["Y", "Yfiber", "sphere", "curve-zero", "cusp-fiber", "diag-zero"])
    b.add_argument("args", nargs="*")
    b.add_argument("--action", choices=sorted(set(_ACTIONS) | set(_FLIPS)))
    b.add_argument("--fixed", action="store_true", help="sphere action has a fixed point")
    b.add_argument("--flip-x", action="store_true", help="the involution flips x")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_beta)

    z = sub.add_parser("zeta", help="truncated zeta function of a germ")
    z.add_argument("germ")
    z.add_argument("--channel", choices=[c.value for c in Channel], default="naive")
    z.add_argument("--order", type=int, default=None, help="highest degree (default: the validity bound)")
    z.add_argument("--partner", help="second germ, for the tail annotation")
    z.add_argument("--json", action="store_true")
    z.set_defaults(func=cmd_zeta)

    c = sub.add_parser("compare", help="classify a pair of germs")
    c.add_argument("germ1")
    c.add_argument("germ2")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_compare)

    t = sub.add_parser("table", help="classify every pair of a grid, both paths")
    t.add_argument("--families", nargs="+", default=["AB"], help="AB, CD, EF, E78 or single family letters")
    t.add_argument("--kmax", type=int, default=3)
    t.add_argument("--pqmax", type=int, default=4)
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_table)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except OutOfRange as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_RANGE
    except DualPathMismatch as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MISMATCH
    except (ArtifactError, ValueError, argparse.ArgumentTypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
