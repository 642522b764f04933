import json
import subprocess
import sys

import pytest

from starpcg.cli import main
from starpcg.graph import parse_graph
from starpcg.pcr import verify_witness, witness_from_dict

P4_TEXT = "4 3\n0 1\n1 2\n2 3\n"
TRIANGLES_TEXT = "6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n"


@pytest.fixture
def files(tmp_path):
    (tmp_path / "p4.graph").write_text(P4_TEXT)
    (tmp_path / "tt.graph").write_text(TRIANGLES_TEXT)
    return tmp_path


def test_recognize_then_verify(files, capsys):
    out = files / "w.json"
    assert main(["recognize", str(files / "p4.graph"), "--json", str(out)]) == 0
    doc = json.loads(out.read_text())
    pcr, order = witness_from_dict(doc)
    assert verify_witness(parse_graph(P4_TEXT), pcr, order)
    for key in ("weights",):
        for num, den in doc[key]:
            assert int(den) > 0
    capsys.readouterr()
    assert main(["verify", str(files / "p4.graph"), str(out)]) == 0
    assert capsys.readouterr().out.strip() == "witness valid"


def test_verify_rejects_wrong_graph(files, capsys):
    out = files / "w.json"
    main(["recognize", str(files / "p4.graph"), "--json", str(out)])
    (files / "other.graph").write_text("4 2\n0 1\n2 3\n")
    assert main(["verify", str(files / "other.graph"), str(out)]) == 1
    assert "invalid" in capsys.readouterr().out


def test_recognize_refusal(files, capsys):
    assert main(["recognize", str(files / "tt.graph"), "--json", "-"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["star_pcg"] is False and doc["kind"] == "two_nonbipartite_components"


def test_gapcheck(files, capsys):
    assert main(["gapcheck", str(files / "p4.graph"), "--order", "2,0,1,3"]) == 0
    assert capsys.readouterr().out.strip() == "gap-free"
    assert main(["gapcheck", str(files / "p4.graph"), "--order", "0,1,2,3"]) == 1
    cert = json.loads(capsys.readouterr().out)
    assert cert["condition"] == "g3" and cert["vertices"] == [0, 2]
    assert main(["gapcheck", str(files / "p4.graph"), "--order", "0,1,2"]) == 2


def test_eval(tmp_path, capsys):
    tree = tmp_path / "star.tree"
    tree.write_text("5\n0 1 1\n0 2 2\n0 3 5\n0 4 6\n1 2 3 4\n")
    assert main(["eval", str(tree), "--dmin", "7", "--dmax", "7"]) == 0
    assert parse_graph(capsys.readouterr().out).edges() == [(0, 3), (1, 2)]
    assert main(["eval", str(tree), "--dmin", "8", "--dmax", "7/2"]) == 2


def test_oracle(files, capsys):
    assert main(["oracle", str(files / "p4.graph")]) == 0
    assert capsys.readouterr().out.strip() == "0,2,3,1"
    assert main(["oracle", str(files / "tt.graph")]) == 1
    assert main(["oracle", str(files / "tt.graph"), "--limit", "5"]) == 2


def test_gen(capsys):
    assert main(["gen", "--n", "8", "--seed", "7", "--p", "0.3"]) == 0
    first = capsys.readouterr().out
    main(["gen", "--n", "8", "--seed", "7", "--p", "0.3"])
    assert capsys.readouterr().out == first
    assert parse_graph(first).n == 8
    assert main(["gen", "--n", "6", "--seed", "1", "--star-pcg", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    pcr, order = witness_from_dict(doc["witness"])
    assert verify_witness(parse_graph(doc["graph"]), pcr, order)


def test_gen_requires_seed_and_kind():
    for argv in (["gen", "--n", "5", "--p", "0.5"], ["gen", "--n", "5", "--seed", "1"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["gen", "--n", "5", "--seed", "1", "--p", "2"])


def test_family_commands(tmp_path, capsys):
    fam = tmp_path / "f.fam"
    fam.write_text("4 2\n4 0 1 2 3\n2 1 2\n")
    assert main(["c1p", str(fam)]) == 0
    assert capsys.readouterr().out.strip() == "1,2,0,3"
    assert main(["contiguous", str(fam)]) == 0
    assert capsys.readouterr().out.strip() == "0,3,1,2"
    fam.write_text("3 3\n2 0 1\n2 1 2\n2 0 2\n")
    assert main(["c1p", str(fam)]) == 1
    assert main(["contiguous", str(fam)]) == 1


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("2 1\n0 0\n")
    assert main(["recognize", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["recognize", str(tmp_path / "missing.graph")]) == 2
    out = tmp_path / "never.json"
    assert main(["recognize", str(bad), "--json", str(out)]) == 2
    assert not out.exists()
    witness = tmp_path / "w.json"
    witness.write_text("{not json")
    (tmp_path / "p4.graph").write_text(P4_TEXT)
    assert main(["verify", str(tmp_path / "p4.graph"), str(witness)]) == 2


def test_console_script_module_entry(files):
    proc = subprocess.run(
        [sys.executable, "-m", "starpcg.cli", "recognize", str(files / "tt.graph")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1 and "two_nonbipartite_components" in proc.stdout
