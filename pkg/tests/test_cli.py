import json

import pytest
from hypothesis import given, settings, strategies as st

from equihom.c2sset import fill_sphere_table
from equihom.cli import ARITY, ATOMS, ExprError, SpaceExpr, build, main, parse_expr, validate
from equihom.grfree import RHO, FreeDescriptor, SphereTable, evaluate_descriptor, fixed, induced_summand
from equihom.mackey import MackeyFunctor, induced, isomorphic, norm_F2


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(out):
    return [MackeyFunctor.from_record(r["mackey"]) for r in json.loads(out)["rows"]]


def test_homology_point(capsys):
    code, out, _ = run(capsys, "homology", "--space", "pt", "--coeff", "B", "--max-degree", "1")
    assert code == 0
    rows = rows_of(out)
    assert rows[0] == norm_F2() and rows[1].is_zero()


def test_homology_ssigma_reduced(capsys):
    code, out, _ = run(capsys, "homology", "--space", "Ssigma", "--coeff", "B",
                       "--max-degree", "1", "--reduced")
    assert code == 0
    h0, h1 = rows_of(out)
    assert (h0.top.orders, h0.bot.orders) == ((2,), ())
    assert (h1.top.orders, h1.bot.orders) == ((), (2,))


def test_homology_coind_s1_matches_descriptor(capsys):
    code, out, _ = run(capsys, "homology", "--space", "coind(S1)", "--max-degree", "2")
    assert code == 0
    d = FreeDescriptor.of([fixed(0), induced_summand(1), fixed(RHO)])
    table = fill_sphere_table(d.fixed_shifts(), 2, SphereTable())
    for n, h in enumerate(rows_of(out)):
        assert isomorphic(h, evaluate_descriptor(d, n, table))


def test_homology_csv(capsys):
    code, out, _ = run(capsys, "homology", "--space", "C2", "--max-degree", "0", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("degree,top_rank,top_torsion")
    assert lines[1].startswith("0,0,2,0,2 2,")


def test_homology_out_file(capsys, tmp_path):
    target = tmp_path / "h.json"
    code, out, _ = run(capsys, "homology", "--space", "S1", "--max-degree", "1", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["space"] == "S1"


def test_output_is_deterministic(capsys):
    argv = ["homology", "--space", "smash(plus(C2), Ssigma)", "--max-degree", "2"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


@pytest.mark.parametrize("space", ["Srho", "james(Ssigma, 2)", "norm(S1)", "prod(S1, Ssigma)"])
def test_rows_round_trip(capsys, space):
    _, out, _ = run(capsys, "homology", "--space", space, "--max-degree", "2", "--coeff", "A")
    for row in json.loads(out)["rows"]:
        assert MackeyFunctor.from_record(row["mackey"]).to_record() == row["mackey"]


def test_coind_check(capsys):
    code, out, _ = run(capsys, "coind-check", "--space", "S1", "--max-degree", "2")
    assert code == 0
    report = json.loads(out)
    assert report["result"] == "PASS" and len(report["rows"]) == 3
    assert all(r["iso_status"] == "found" for r in report["rows"])
    code, out, _ = run(capsys, "coind-check", "--space", "pt", "--max-degree", "1")
    assert code == 0 and json.loads(out)["descriptor"] == [{"kind": "B", "p": 0, "q": 0}]


def test_james_check(capsys):
    code, out, _ = run(capsys, "james-check", "--stage", "1", "--max-degree", "2")
    assert code == 0
    assert json.loads(out)["descriptor"] == [
        {"kind": "B", "p": 0, "q": 0}, {"kind": "B", "p": 0, "q": 1},
    ]
    code, out, _ = run(capsys, "james-check", "--stage", "2", "--max-degree", "3")
    assert code == 0
    assert json.loads(out)["descriptor"] == [
        {"kind": "B", "p": 0, "q": 0}, {"kind": "B", "p": 0, "q": 1}, {"kind": "B", "p": 1, "q": 1},
    ]


def test_splitting_check(capsys):
    code, out, _ = run(capsys, "splitting-check", "--space", "S1", "--max-degree", "3",
                       "--format", "csv")
    assert code == 0
    assert out.count("PASS") == 4
    code, out, _ = run(capsys, "splitting-check", "--space", "pt", "--max-degree", "2")
    assert code == 0
    for row in json.loads(out)["rows"]:
        lhs = MackeyFunctor.from_record(row["lhs"])
        assert lhs.is_zero()


def test_config_queries(capsys):
    assert run(capsys, "config", "pi0-emb-sigma", "--k", "2")[1] == "8\n"
    assert run(capsys, "config", "norm-status", "--p", "0", "--q", "1")[1] == "MULTIPLE(2)\n"
    assert run(capsys, "config", "graph-count", "--n", "3")[1] == "4\n"
    assert run(capsys, "config", "aut-order", "--n-fixed", "3", "--n-free", "2")[1] == "48\n"
    out = run(capsys, "config", "emb-nonempty", "--n-fixed", "2", "--q", "1", "--format", "json")[1]
    assert json.loads(out) == {"query": "emb-nonempty", "value": False}


def test_parse_error_names_token(capsys):
    code, _, err = run(capsys, "homology", "--space", "wedge(S1, Sfoo)", "--max-degree", "1")
    assert code == 2 and "Sfoo" in err
    code, _, err = run(capsys, "homology", "--space", "coind(Ssigma)", "--max-degree", "1")
    assert code == 2 and "coind" in err
    code, _, err = run(capsys, "homology", "--space", "smash(S1 S2)", "--max-degree", "1")
    assert code == 2 and "S2" in err


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["homology", "--space", "pt", "--max-degree", "-1"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_cell_cap_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("EQUIHOM_MAX_CELLS", "50")
    code, _, err = run(capsys, "homology", "--space", "coind(RP2)", "--max-degree", "2")
    assert code == 3 and err
    monkeypatch.delenv("EQUIHOM_MAX_CELLS")
    assert run(capsys, "config", "graph-count", "--n", "9")[0] == 3


def test_parse_examples():
    e = parse_expr("  james( suspsigma(S0) ,3 ) ")
    assert e == SpaceExpr("james", (SpaceExpr("suspsigma", (SpaceExpr("S0"),)), 3))
    assert str(e) == "james(suspsigma(S0), 3)"
    for bad in ["", "S1)", "james(S1, x)", "norm(C2)", "susp(C2)", "S1 $"]:
        with pytest.raises(ExprError):
            parse_expr(bad)


POINTED_TRIVIAL = ["pt", "S0", "S1", "S2"]


def exprs():
    atoms = st.sampled_from(sorted(ATOMS)).map(SpaceExpr)
    unary = sorted(op for op, k in ARITY.items() if k == 1)
    binary = sorted(op for op, k in ARITY.items() if k == 2 and op != "james")

    def extend(inner):
        return st.one_of(
            st.builds(lambda op, a: SpaceExpr(op, (a,)), st.sampled_from(unary), inner),
            st.builds(lambda op, a, b: SpaceExpr(op, (a, b)), st.sampled_from(binary), inner, inner),
            st.builds(lambda a, k: SpaceExpr("james", (a, k)), inner, st.integers(0, 3)),
        )

    return st.recursive(atoms, extend, max_leaves=4)


@given(exprs())
@settings(max_examples=200)
def test_parser_round_trip(e):
    try:
        validate(e)
    except ExprError:
        with pytest.raises(ExprError):
            parse_expr(str(e))
        return
    assert parse_expr(str(e)) == e
    assert parse_expr(str(e).replace(", ", ",")) == e


@given(st.sampled_from(POINTED_TRIVIAL), st.sampled_from(POINTED_TRIVIAL))
@settings(max_examples=10, deadline=None)
def test_build_validated_expressions(a, b):
    e = parse_expr(f"wedge(susp({a}), {b})")
    x = build(e, 2)
    assert x.name == str(e) and x.is_pointed()


def test_induced_row_matches(capsys):
    _, out, _ = run(capsys, "homology", "--space", "C2", "--max-degree", "0")
    assert isomorphic(rows_of(out)[0], induced(norm_F2()))
