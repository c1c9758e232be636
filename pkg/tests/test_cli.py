import json

from ekl.cli import main


def write(tmp_path, name, content):
    path = tmp_path / name
    path.write_text(content, encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


MAP_S2 = json.dumps({"variables": ["x", "y"], "components": ["x + y", "x*y"]})


def test_degree_named(tmp_path, capsys):
    path = write(tmp_path, "m.json", MAP_S2)
    code, out, err = run(capsys, "degree", path)
    assert code == 0
    assert out.strip() == "1<1> + 1<-1>"


def test_degree_identity_one_var(tmp_path, capsys):
    path = write(tmp_path, "m.json", json.dumps({"variables": ["x"], "components": ["x"]}))
    code, out, _ = run(capsys, "degree", path)
    assert code == 0
    assert out.strip() == "1<1>"


def test_degree_formats(tmp_path, capsys):
    path = write(tmp_path, "m.json", MAP_S2)
    code, out, _ = run(capsys, "degree", path, "--format", "diag")
    assert code == 0 and out.strip() == "⟨-2,2⟩"
    code, out, _ = run(capsys, "degree", path, "--format", "invariants")
    assert code == 0
    assert "rank 2" in out and "signature 0" in out and "discriminant -1" in out
    code, out, _ = run(capsys, "degree", path, "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["dimension"] == "2"
    assert report["socle_coordinates"] == ["0", "-1"]
    assert report["named_form"] == "1<1> + 1<-1>"


def test_degree_json_roundtrip(tmp_path, capsys):
    path = write(tmp_path, "m.json", MAP_S2)
    code, out, _ = run(capsys, "degree", path, "--format", "json")
    report = json.loads(out)
    path2 = write(tmp_path, "again.json", json.dumps(report["input"]))
    code2, out2, _ = run(capsys, "degree", path2, "--format", "json")
    report2 = json.loads(out2)
    report.pop("timing_seconds")
    report2.pop("timing_seconds")
    assert report == report2


def test_degree_exit_code_parse_error(tmp_path, capsys):
    path = write(tmp_path, "bad.json", '{"variables": ["x"], "components": ["x +* 2"]}')
    code, out, err = run(capsys, "degree", path)
    assert code == 2
    assert "parse error" in err
    path2 = write(tmp_path, "bad2.json", "not even json")
    code, _, err = run(capsys, "degree", path2)
    assert code == 2


def test_degree_exit_code_unknown_variable(tmp_path, capsys):
    path = write(tmp_path, "bad.json", '{"variables": ["x"], "components": ["x + q"]}')
    code, _, err = run(capsys, "degree", path)
    assert code == 2


def test_degree_exit_code_not_origin(tmp_path, capsys):
    path = write(
        tmp_path,
        "m.json",
        json.dumps({"variables": ["x", "y"], "components": ["x*(x - 1)", "y"]}),
    )
    code, _, err = run(capsys, "degree", path)
    assert code == 3
    assert "origin" in err


def test_degree_field_flag(tmp_path, capsys):
    path = write(tmp_path, "m.json", MAP_S2)
    code, out, _ = run(capsys, "degree", path, "--field", "fp:5", "--format", "invariants")
    assert code == 0
    assert "rank 2" in out


def test_quotient_match_a22(capsys):
    code, out, _ = run(capsys, "quotient", "--type", "A", "--blocks", "2,2")
    assert code == 0
    assert "computed: 4<1> + 2<-1>" in out
    assert "verdict: MATCH" in out


def test_quotient_match_a111(capsys):
    code, out, _ = run(capsys, "quotient", "--type", "A", "--blocks", "1,1,1")
    assert code == 0
    assert "computed: 3<1> + 3<-1>" in out
    assert "verdict: MATCH" in out


def test_quotient_d5_d4(capsys):
    code, out, _ = run(capsys, "quotient", "--type", "D", "--rank", "5", "--parabolic", "D4")
    assert code == 0
    assert "verdict: MATCH" in out
    assert "alpha = " in out


def test_quotient_emit_map_roundtrip(tmp_path, capsys):
    out_path = str(tmp_path / "emitted.json")
    code, out, _ = run(
        capsys, "quotient", "--type", "A", "--blocks", "2,1", "--emit-map", out_path
    )
    assert code == 0
    data = json.loads(open(out_path).read())
    assert "family=A-partial" in data["comment"]
    code2, out2, _ = run(capsys, "degree", out_path)
    assert code2 == 0
    assert out2.strip() == "2<1> + 1<-1>"


def test_quotient_bad_parameters(capsys):
    code, _, err = run(capsys, "quotient", "--type", "A")
    assert code == 2
    code, _, err = run(capsys, "quotient", "--type", "D", "--rank", "6", "--parabolic", "D5")
    assert code == 2


def test_weyl_ap_e6(capsys):
    code, out, _ = run(capsys, "weyl", "ap", "--type", "E6", "--remove", "1")
    assert code == 0
    assert "a_P: 3" in out
    assert "order 51840" in out
    assert "order 1920" in out
    assert "cosets: 27" in out


def test_weyl_ap_e6_remove_two(capsys):
    code, out, _ = run(capsys, "weyl", "ap", "--type", "E6", "--remove", "1,6")
    assert code == 0
    assert "a_P: 6" in out


def test_weyl_ap_shortcut(capsys):
    code, out, _ = run(capsys, "weyl", "ap", "--type", "F4", "--remove", "1")
    assert code == 0
    assert "a_P: 0" in out
    assert "central longest word" in out


def test_weyl_ap_keep(capsys):
    code, out, _ = run(capsys, "weyl", "ap", "--type", "D5", "--keep", "1,2,3,4")
    assert code == 0
    assert "a_P: 2" in out


def test_weyl_ap_improper(capsys):
    code, _, err = run(capsys, "weyl", "ap", "--type", "A2", "--keep", "1,2")
    assert code == 2


def test_weyl_ap_budget_exceeded(capsys, monkeypatch):
    monkeypatch.setenv("EKL_ENUM_BUDGET", "4")
    code, _, err = run(capsys, "weyl", "ap", "--type", "E6", "--remove", "1", "--method", "enumerate")
    assert code == 1
    assert "budget" in err


def test_weyl_info(capsys):
    code, out, _ = run(capsys, "weyl", "info", "--type", "D5")
    assert code == 0
    assert "order: 1920" in out
    assert "positive roots: 20" in out
    assert "longest word length: 20" in out


def test_weyl_bad_type(capsys):
    code, _, err = run(capsys, "weyl", "info", "--type", "Q9")
    assert code == 2


def test_gw_classify_hyperbolic(tmp_path, capsys):
    path = write(tmp_path, "g.json", '[["0", "1"], ["1", "0"]]')
    code, out, _ = run(capsys, "gw", "classify", path)
    assert code == 0
    assert "named form: 1<1> + 1<-1>" in out


def test_gw_classify_identity2(tmp_path, capsys):
    path = write(tmp_path, "g.json", '[["1", "0"], ["0", "1"]]')
    code, out, _ = run(capsys, "gw", "classify", path)
    assert code == 0
    assert "named form: 2<1>" in out


def test_gw_classify_rank_one(tmp_path, capsys):
    path = write(tmp_path, "g.json", '[["2"]]')
    code, out, _ = run(capsys, "gw", "classify", path)
    assert code == 0
    assert "diagonal: ⟨2⟩" in out
    assert "discriminant: 2" in out


def test_gw_classify_degenerate(tmp_path, capsys):
    path = write(tmp_path, "g.json", '[["1", "1"], ["1", "1"]]')
    code, _, err = run(capsys, "gw", "classify", path)
    assert code == 4
    path2 = write(tmp_path, "g2.json", '[["0", "1"], ["2", "0"]]')
    code2, _, _ = run(capsys, "gw", "classify", path2)
    assert code2 == 2  # asymmetric input is a parse-level rejection


def test_gw_classify_fractions(tmp_path, capsys):
    path = write(tmp_path, "g.json", '[["1/3"]]')
    code, out, _ = run(capsys, "gw", "classify", path)
    assert code == 0
    assert "diagonal: ⟨3⟩" in out
