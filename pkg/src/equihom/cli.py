"""Command line interface: homology tables and formula checks.

Spaces are given as prefix expressions such as ``smash(Ssigma, coind(S1))``
or ``james(Ssigma, 2)``.  Exit codes: 0 success, 1 a check failed, 2 bad
expression or arguments, 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass

from . import confcomb
from .c2sset import (
    C2SSet,
    CellLimitExceeded,
    bredon_homology_range,
    builtin,
    cell_limit,
    coinduce,
    disjoint_basepoint,
    james_stage,
    norm_space,
    product,
    smash,
    suspend_sigma,
    suspend_trivial,
    wedge,
)
from .checks import (
    SPHERE_ATOMS,
    CheckReport,
    coind_check,
    sphere_james_check,
    splitting_check,
)
from .mackey import MackeyFunctor, burnside, constant_z, norm_F2

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_MAX_CELLS = 200_000

COEFFICIENTS = {"B": norm_F2, "A": burnside, "Zconst": constant_z}

# atom -> (pointed, trivial action)
ATOMS = {
    "pt": (True, True),
    "S0": (True, True),
    "S1": (True, True),
    "S2": (True, True),
    "Ssigma": (True, False),
    "Srho": (True, False),
    "C2": (False, False),
    "RP2": (True, True),
    "circle_wedge2": (True, True),
}
ARITY = {
    "wedge": 2, "smash": 2, "prod": 2, "coind": 1, "norm": 1,
    "susp": 1, "suspsigma": 1, "plus": 1, "james": 2,
}


class ExprError(ValueError):
    def __init__(self, message: str, token: str | None = None):
        super().__init__(message)
        self.token = token


@dataclass(frozen=True)
class SpaceExpr:
    op: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args and self.op in ATOMS:
            return self.op
        return f"{self.op}({', '.join(str(a) for a in self.args)})"


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\d+)|(\S))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if m.group(3) and tok not in "(),":
            raise ExprError(f"unexpected character {tok!r}", tok)
        tokens.append(tok)
        pos = m.end()
    return tokens


def parse_expr(text: str) -> SpaceExpr:
    tokens = _tokenize(text)
    if not tokens:
        raise ExprError("empty space expression", "")
    pos = 0

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def expect(tok: str) -> None:
        nonlocal pos
        got = peek()
        if got != tok:
            raise ExprError(f"expected {tok!r} but found {got or 'end of input'!r}", got or "")
        pos += 1

    def parse() -> SpaceExpr:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise ExprError("unexpected end of input", "")
        pos += 1
        if tok in ATOMS:
            return SpaceExpr(tok)
        if tok not in ARITY:
            raise ExprError(f"unknown name {tok!r}", tok)
        expect("(")
        args: list = [parse()]
        for _ in range(ARITY[tok] - 1):
            expect(",")
            if tok == "james":
                num = peek()
                if num is None or not num.isdigit():
                    raise ExprError(f"james expects a stage number, found {num!r}", num or "")
                pos += 1
                args.append(int(num))
            else:
                args.append(parse())
        expect(")")
        return SpaceExpr(tok, tuple(args))

    out = parse()
    if pos != len(tokens):
        raise ExprError(f"unexpected token {tokens[pos]!r}", tokens[pos])
    validate(out)
    return out


def validate(e: SpaceExpr) -> tuple[bool, bool]:
    """Return (pointed, trivial action), raising ExprError on misuse."""
    if e.op in ATOMS:
        return ATOMS[e.op]
    kids = [validate(a) for a in e.args if isinstance(a, SpaceExpr)]

    def need_pointed(k: int = 0) -> None:
        if not kids[k][0]:
            raise ExprError(f"{e.op} requires a pointed argument", e.op)

    if e.op in ("wedge", "smash"):
        need_pointed(0)
        need_pointed(1)
        return True, kids[0][1] and kids[1][1]
    if e.op == "prod":
        return kids[0][0] and kids[1][0], kids[0][1] and kids[1][1]
    if e.op in ("coind", "norm"):
        if not kids[0][1]:
            raise ExprError(f"{e.op} requires an argument with trivial action", e.op)
        if e.op == "norm":
            need_pointed()
        return kids[0][0], False
    if e.op == "susp":
        need_pointed()
        return True, kids[0][1]
    if e.op == "suspsigma":
        need_pointed()
        return True, False
    if e.op == "plus":
        return True, kids[0][1]
    if e.op == "james":
        need_pointed()
        return True, kids[0][1]
    raise ExprError(f"unknown name {e.op!r}", e.op)


def build(e: SpaceExpr, dim_bound: int | None = None) -> C2SSet:
    if e.op in ATOMS:
        return builtin(e.op)
    a = [build(x, dim_bound) if isinstance(x, SpaceExpr) else x for x in e.args]
    if e.op == "wedge":
        out = wedge(a[0], a[1])
    elif e.op == "smash":
        out = smash(a[0], a[1], dim_bound)
    elif e.op == "prod":
        out = product(a[0], a[1], dim_bound)
    elif e.op == "coind":
        out = coinduce(a[0], dim_bound)
    elif e.op == "norm":
        out = norm_space(a[0], dim_bound)
    elif e.op == "susp":
        out = suspend_trivial(a[0], dim_bound)
    elif e.op == "suspsigma":
        out = suspend_sigma(a[0], dim_bound)
    elif e.op == "plus":
        out = disjoint_basepoint(a[0])
    else:
        out = james_stage(a[0], a[1], dim_bound)
    out.name = str(e)
    return out


# ---------------------------------------------------------------------------
# output


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _torsion(rec: dict) -> str:
    return " ".join(str(t) for t in rec["torsion"])


def _compact(m) -> str:
    return json.dumps(m, separators=(",", ":"))


def homology_table(expr: SpaceExpr, coeff: str, rows: list[MackeyFunctor], reduced: bool) -> dict:
    return {
        "space": str(expr),
        "coefficient": coeff,
        "reduced": reduced,
        "rows": [{"degree": n, "mackey": h.to_record()} for n, h in enumerate(rows)],
    }


def table_csv(table: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["degree", "top_rank", "top_torsion", "bot_rank", "bot_torsion", "res", "tr", "weyl"])
    for row in table["rows"]:
        rec = row["mackey"]
        w.writerow([
            row["degree"], rec["top"]["rank"], _torsion(rec["top"]), rec["bot"]["rank"],
            _torsion(rec["bot"]), _compact(rec["res"]), _compact(rec["tr"]), _compact(rec["weyl"]),
        ])
    return buf.getvalue()


def report_csv(report: CheckReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "degree", "verdict", "iso_status", "lhs_top", "lhs_bot", "rhs_top", "rhs_bot"])
    for r in report.rows:
        w.writerow([report.name, r.degree, r.verdict, r.iso_status,
                    r.lhs.top, r.lhs.bot, r.rhs.top, r.rhs.bot])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(report: CheckReport, args) -> int:
    text = report_csv(report) if args.format == "csv" else _dump_json(report.to_json())
    _emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# commands


def cmd_homology(args) -> int:
    expr = parse_expr(args.space)
    x = build(expr, args.max_degree + 1)
    rows = bredon_homology_range(x, COEFFICIENTS[args.coeff](), args.max_degree, args.reduced)
    table = homology_table(expr, args.coeff, rows, args.reduced)
    _emit(table_csv(table) if args.format == "csv" else _dump_json(table), args.out)
    return EXIT_OK


def _plain_space(text: str) -> C2SSet:
    expr = parse_expr(text)
    if not validate(expr)[1]:
        raise ExprError(f"{expr} must carry the trivial action", expr.op)
    return build(expr)


def cmd_coind_check(args) -> int:
    return _emit_report(coind_check(_plain_space(args.space), args.max_degree), args)


def cmd_james_check(args) -> int:
    if args.space not in SPHERE_ATOMS:
        raise ExprError(f"james-check needs a sphere atom, got {args.space!r}", args.space)
    if args.stage < 0:
        raise ExprError("stage must be nonnegative", str(args.stage))
    return _emit_report(sphere_james_check(args.space, args.stage, args.max_degree), args)


def cmd_splitting_check(args) -> int:
    x = _plain_space(args.space)
    x.require_pointed()
    return _emit_report(splitting_check(x, args.max_degree), args)


def cmd_config(args) -> int:
    if args.query == "pi0-emb-sigma":
        value = confcomb.pi0_emb_sigma(args.k)
    elif args.query == "norm-status":
        value = str(confcomb.norm_map_status(confcomb.RepPQ(args.p, args.q)))
    elif args.query == "graph-count":
        value = confcomb.graph_subgroup_count(args.n)
    elif args.query == "aut-order":
        value = confcomb.aut_order(confcomb.C2SetDescriptor(args.n_fixed, args.n_free))
    else:
        value = confcomb.emb_nonempty(confcomb.C2SetDescriptor(args.n_fixed, args.n_free),
                                      confcomb.RepPQ(args.p, args.q))
    if args.format == "json":
        text = _dump_json({"query": args.query, "value": value})
    else:
        text = f"{value}\n"
    _emit(text, args.out)
    return EXIT_OK


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="equihom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, max_degree_default: int | None = None) -> None:
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", default=None, help="write output to this file")
        if max_degree_default is not None:
            p.add_argument("--max-degree", type=_nonneg, default=max_degree_default)

    p = sub.add_parser("homology", help="Bredon homology table of a space")
    p.add_argument("--space", required=True)
    p.add_argument("--coeff", choices=sorted(COEFFICIENTS), default="B")
    p.add_argument("--reduced", action="store_true")
    common(p, 2)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("coind-check", help="coinduction homology against the norm formula")
    p.add_argument("--space", required=True)
    common(p, 2)
    p.set_defaults(func=cmd_coind_check)

    p = sub.add_parser("james-check", help="signed James stage against its prediction")
    p.add_argument("--space", default="Ssigma")
    p.add_argument("--stage", type=int, required=True)
    common(p, 4)
    p.set_defaults(func=cmd_james_check)

    p = sub.add_parser("splitting-check", help="splitting of the sigma-suspended coinduction")
    p.add_argument("--space", required=True)
    common(p, 3)
    p.set_defaults(func=cmd_splitting_check)

    p = sub.add_parser("config", help="configuration-space counts")
    csub = p.add_subparsers(dest="query", required=True, parser_class=_Parser)
    q = csub.add_parser("pi0-emb-sigma")
    q.add_argument("--k", type=_nonneg, required=True)
    q = csub.add_parser("norm-status")
    q.add_argument("--p", type=_nonneg, default=0)
    q.add_argument("--q", type=_nonneg, required=True)
    q = csub.add_parser("graph-count")
    q.add_argument("--n", type=_nonneg, required=True)
    q = csub.add_parser("aut-order")
    q.add_argument("--n-fixed", type=_nonneg, default=0)
    q.add_argument("--n-free", type=_nonneg, default=0)
    q = csub.add_parser("emb-nonempty")
    q.add_argument("--n-fixed", type=_nonneg, default=0)
    q.add_argument("--n-free", type=_nonneg, default=0)
    q.add_argument("--p", type=_nonneg, default=0)
    q.add_argument("--q", type=_nonneg, default=0)
    for q in csub.choices.values():
        q.add_argument("--format", choices=["json", "text"], default="text")
        q.add_argument("--out", default=None)
    p.set_defaults(func=cmd_config)
    return parser


def _max_cells() -> int:
    raw = os.environ.get("EQUIHOM_MAX_CELLS", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_CELLS
    except ValueError:
        return DEFAULT_MAX_CELLS


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        with cell_limit(_max_cells()):
            return args.func(args)
    except ExprError as exc:
        token = f" (at token {exc.token!r})" if exc.token is not None else ""
        print(f"equihom: parse error: {exc}{token}", file=sys.stderr)
        return EXIT_PARSE
    except CellLimitExceeded as exc:
        print(f"equihom: {exc}", file=sys.stderr)
        return EXIT_CAP
    except confcomb.TooLarge as exc:
        print(f"equihom: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
