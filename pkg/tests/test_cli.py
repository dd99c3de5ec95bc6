import json
from fractions import Fraction

import pytest

import oracles as orc
from novq import POLY, RATIONAL, parse
from novq.cli import main

F = Fraction


def _canonical_r_lines(names, dim_a):
    lines = ["", "relement r"]
    for i in range(dim_a):
        lines.append(f"{names[i]} {names[dim_a + i]} -> 1")
        lines.append(f"{names[dim_a + i]} {names[i]} -> -1")
    return "\n".join(lines) + "\n"


def test_verify_diff_asi_profile(capsys):
    assert main(["verify", "fixtures/exnov1", "--profile", "diff-asi"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[-1] == "all checks hold"
    assert len(lines) == 11
    assert all(line.endswith(": holds") for line in lines[:-1])
    assert any(line.startswith("ASI_1") for line in lines)


def test_verify_zinbiel_profile(capsys):
    for fx in ("fixtures/zinb-deriv", "fixtures/zinb-nonderiv"):
        assert main(["verify", fx, "--profile", "zinbiel"]) == 0
        out = capsys.readouterr().out
        assert "ZINBIEL: holds" in out
        assert "ZINB_ADMISS: holds" in out


def test_verify_novikov_failure(tmp_path, capsys):
    bad = tmp_path / "bad"
    bad.write_text("space 2 e1 e2\nring Q\nproduct circ\ne1 e2 -> e1\n")
    assert main(["verify", str(bad), "--profile", "novikov"]) == 1
    out = capsys.readouterr().out
    assert "NOV_LSYM: fails at (e1, e2, e2)" in out
    assert out.strip().splitlines()[-1] == "some checks fail"


def test_induce_rational_golden(tmp_path, capsys):
    target = tmp_path / "out"
    assert main(["induce", "fixtures/exnov1", "--q", "-1/2",
                 "--emit", str(target)]) == 0
    assert f"wrote {target}" in capsys.readouterr().out
    pres = parse(target.read_text())
    assert pres.ring == RATIONAL
    t = orc.op_table(pres.binop("circ"))
    assert t[0][0][0] == {0: F(-1, 2)}
    assert t[0][1][1] == {0: F(1)}
    assert t[1][0][1] == {0: F(-1, 2)}
    assert not any(t[1][1])
    d = orc.cop_table(pres.coop("Delta"))
    assert d[1][1][1] == {0: F(-1, 2)}
    assert d[0] == [[{} for _ in range(2)] for _ in range(2)]


def test_induce_symbolic_stdout(capsys):
    assert main(["induce", "fixtures/exnov1", "--q", "sym"]) == 0
    out = capsys.readouterr().out
    assert out == ("space 2 e1 e2\n"
                   "ring Q[q]\n"
                   "\n"
                   "product circ\n"
                   "e1 e1 -> q*e1\n"
                   "e1 e2 -> e2\n"
                   "e2 e1 -> q*e2\n"
                   "\n"
                   "coproduct Delta\n"
                   "e2 -> q*e2 (x) e2\n")


def test_induce_bad_q_is_usage_error(capsys):
    assert main(["induce", "fixtures/exnov1", "--q", "abc"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("usage error:")
    assert "--q" in err


def test_double_pipeline_manin(tmp_path, capsys):
    d12 = tmp_path / "d12"
    assert main(["double", "fixtures/examp2-double", "--emit", str(d12)]) == 0
    pres = parse(d12.read_text())
    assert pres.dim == 12
    n12 = tmp_path / "n12"
    assert main(["induce", str(d12), "--q", "-1/2", "--emit", str(n12)]) == 0
    assert main(["verify", str(n12), "--profile", "manin"]) == 0
    out = capsys.readouterr().out
    assert "BILIN_INV_NOV: holds" in out
    assert "SUBALG_LEFT: holds" in out


def test_double_of_zinbiel_matches_fixture(tmp_path):
    target = tmp_path / "dbl"
    assert main(["double", "fixtures/zinb-nonderiv", "--emit", str(target)]) == 0
    with open("fixtures/examp2-double", encoding="utf-8") as fh:
        assert target.read_text() == fh.read()


def test_verify_quadratic_profile(tmp_path, capsys):
    d4 = tmp_path / "d4"
    assert main(["double", "fixtures/exnov1", "--emit", str(d4)]) == 0
    n4 = tmp_path / "n4"
    assert main(["induce", str(d4), "--q", "-1/2", "--emit", str(n4)]) == 0
    text = n4.read_text() + ("\nform B\n"
                             "e1 e1' -> 1\n"
                             "e1' e1 -> 1\n"
                             "e2 e2' -> 1\n"
                             "e2' e2 -> 1\n")
    withform = tmp_path / "n4b"
    withform.write_text(text)
    assert main(["verify", str(withform), "--profile", "quadratic"]) == 0
    out = capsys.readouterr().out
    assert "FORM_NONDEG: holds" in out
    # the same profile without a form in the file is a usage error
    assert main(["verify", str(n4), "--profile", "quadratic"]) == 2
    assert "no form" in capsys.readouterr().err


def test_ybe_aybe_and_admissible(tmp_path, capsys):
    with open("fixtures/examp2-double", encoding="utf-8") as fh:
        base = fh.read()
    names = parse(base).space.names
    target = tmp_path / "withr"
    target.write_text(base + _canonical_r_lines(names, 3))
    assert main(["ybe", str(target), "--check", "aybe"]) == 0
    assert "AYBE: holds" in capsys.readouterr().out
    assert main(["ybe", str(target), "--check", "admissible"]) == 0
    assert "R_ADMISS: holds" in capsys.readouterr().out


def test_ybe_admissible_failure(tmp_path, capsys):
    bad = tmp_path / "badr"
    bad.write_text("space 2 e1 e2\nring Q\nmap D\ne2 -> e2\nmap Q\ne1 -> e1\n"
                   "relement r\ne1 e1 -> 1\n")
    assert main(["ybe", str(bad), "--check", "admissible"]) == 1
    out = capsys.readouterr().out
    assert "R_ADMISS: fails" in out


def test_ybe_nybe_symbolic_and_specialized(tmp_path, capsys):
    mid = tmp_path / "circ6"
    assert main(["induce", "fixtures/zinb-deriv-double", "--q", "sym",
                 "--emit", str(mid)]) == 0
    text = mid.read_text()
    names = parse(text).space.names
    withr = tmp_path / "withr"
    withr.write_text(text + _canonical_r_lines(names, 3))
    assert main(["ybe", str(withr), "--check", "nybe"]) == 0
    assert "NYBE: holds" in capsys.readouterr().out

    # the non-derivation double solves it at -1/2 and misses at -1
    for qval, want in (("-1/2", 0), ("-1", 1)):
        m2 = tmp_path / f"c{want}"
        assert main(["induce", "fixtures/examp2-double", "--q", qval,
                     "--emit", str(m2)]) == 0
        t2 = m2.read_text()
        w2 = tmp_path / f"w{want}"
        w2.write_text(t2 + _canonical_r_lines(parse(t2).space.names, 3))
        assert main(["ybe", str(w2), "--check", "nybe"]) == want
    assert "NYBE: fails" in capsys.readouterr().out


def test_locus_outputs(capsys):
    assert main(["locus", "fixtures/examp2-double"]) == 0
    assert capsys.readouterr().out.strip() == "{-1/2, -1}"
    assert main(["locus", "fixtures/zinb-deriv-double"]) == 0
    assert capsys.readouterr().out.strip() == "all q"
    assert main(["locus", "fixtures/exnov1"]) == 0
    assert capsys.readouterr().out.strip() == "{0, -1/2}"
    # a plain Zinbiel file goes through its double first
    assert main(["locus", "fixtures/zinb-nonderiv"]) == 0
    assert capsys.readouterr().out.strip() == "{-1/2, -1}"


def test_window_output(capsys):
    assert main(["window", "fixtures/exnov1", "--q", "-1/2",
                 "--min", "-3", "--max", "3"]) == 0
    out = capsys.readouterr().out
    assert "jacobi triples: 1120 checked, 1624 outside the window" in out
    assert "all checks hold" in out
    assert "LIE_BIALG_COCYCLE: holds" in out


def test_window_rejects_bad_point(capsys):
    assert main(["window", "fixtures/exnov1", "--q", "1",
                 "--min", "-1", "--max", "1"]) == 1
    assert "check failed:" in capsys.readouterr().err


def test_polywindow(capsys):
    assert main(["polywindow", "--N", "4"]) == 0
    out = capsys.readouterr().out
    assert out.strip().splitlines()[-1] == "all checks hold"
    assert len([l for l in out.splitlines() if ": holds" in l]) == 7
    assert main(["polywindow", "--N", "3", "--q", "3/2"]) == 0


def test_json_out_verify(tmp_path):
    side = tmp_path / "report.json"
    assert main(["verify", "fixtures/exnov1", "--profile", "diff-asi",
                 "--json-out", str(side)]) == 0
    doc = json.loads(side.read_text())
    assert doc["command"] == "verify"
    assert doc["exit_code"] == 0
    assert len(doc["checks"]) == 10
    row = doc["checks"][0]
    assert set(row) == {"check", "id", "verdict", "witness", "locus",
                        "residual_degree"}
    assert all(r["verdict"] == "holds" for r in doc["checks"])


def test_json_out_locus(tmp_path):
    side = tmp_path / "locus.json"
    assert main(["locus", "fixtures/examp2-double", "--json-out", str(side)]) == 0
    doc = json.loads(side.read_text())
    assert doc == {"command": "locus", "exit_code": 0,
                   "locus": "{-1/2, -1}", "nonempty": True}


def test_missing_file_and_parse_error(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "nope"), "--profile", "novikov"]) == 2
    assert "error:" in capsys.readouterr().err
    bad = tmp_path / "garbage"
    bad.write_text("this is not a presentation\n")
    assert main(["verify", str(bad), "--profile", "novikov"]) == 2
    assert "parse error: line" in capsys.readouterr().err


def test_unknown_profile_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "fixtures/exnov1", "--profile", "wat"])
    assert exc.value.code == 2


def test_negative_rational_after_space():
    # --q -1/2 with a space must not be read as a new flag
    assert main(["induce", "fixtures/exnov1", "--q", "-1/2"]) == 0
    assert main(["window", "fixtures/exnov1", "--q", "-1/2",
                 "--min", "0", "--max", "0"]) == 0
