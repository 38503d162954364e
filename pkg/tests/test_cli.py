import json

import pytest

from torquiv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fano(capsys):
    code, out, _ = run(capsys, "fano", "2", "4")
    assert code == 0
    assert "class group rank: 4" in out
    code, out, _ = run(capsys, "fano", "2", "0", "--json")
    assert json.loads(out)["deg"] == [[1, 1, 1]]


def test_unknown_variety_is_error(capsys):
    code, _, err = run(capsys, "fano", "2", "99")
    assert code == 2
    assert "no smooth Fano" in err


def test_quiver_text(capsys):
    code, out, _ = run(capsys, "quiver", "--db", "2", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[:5] == [
        "Q#0",
        "  1 => {x_0x_1, x_3x_4}",
        "  2 => {x_1x_2, x_4x_5}",
        "  3 => {x_2x_3, x_0x_5}",
        "  degree => {0, 0, 0, 0}",
    ]


def test_quiver_formats(capsys):
    code, out, _ = run(capsys, "quiver", "--db", "2", "0", "--out", "dot")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "quiver", "--db", "2", "0", "--json")
    assert len(json.loads(out)["arrows"]) == 6


def test_check_exit_codes(capsys, tmp_path):
    assert run(capsys, "check", "--db", "2", "4")[0] == 0
    assert run(capsys, "check", "--db", "2", "4", "--chain", "4,3,2,0", "--twist", "1")[0] == 0
    bad = tmp_path / "coll.json"
    bad.write_text("[[0], [3]]")
    code, out, _ = run(capsys, "check", "--db", "2", "0", "--collection", str(bad))
    assert code == 1
    assert out.strip() == "doHigherSelfExtsVanish: false"
    assert run(capsys, "check", "--db", "2", "4", "--chain", "3,2")[0] == 2


def test_nef(capsys):
    assert run(capsys, "nef", "--db", "2", "4", "--n", "2")[0] == 0
    assert run(capsys, "nef", "--db", "2", "4", "--n", "0")[0] == 1
    code, out, _ = run(capsys, "nef", "--db", "2", "4", "--n", "1", "--json")
    assert json.loads(out) == {"check": "bundlesNefCheck", "n": 1, "result": True}


def test_forbidden(capsys):
    code, out, _ = run(capsys, "forbidden", "--db", "2", "0")
    assert code == 0
    assert out.splitlines() == ["1 => {}", "2 => {{0,1,2}}"]


def test_oracle(capsys, tmp_path):
    code, out, _ = run(capsys, "oracle", "--db", "2", "0", "--divisor=-3,0,0")
    assert code == 0
    assert out.strip() == "h^0 = 0  h^1 = 0  h^2 = 1"
    assert run(capsys, "oracle", "--db", "2", "0", "--divisor", "1,2")[0] == 2
    fan = tmp_path / "p2.json"
    fan.write_text(json.dumps({"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [0, 2]]}))
    code, out, _ = run(capsys, "oracle", "--fan", str(fan), "--divisor", "2,0,0", "--json")
    assert json.loads(out) == {"divisor": [2, 0, 0], "h": [6, 0, 0]}


def test_fan_without_collection_is_usage_error(capsys, tmp_path):
    fan = tmp_path / "p2.json"
    fan.write_text(json.dumps({"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [0, 2]]}))
    assert run(capsys, "quiver", "--fan", str(fan))[0] == 2
    assert run(capsys, "quiver")[0] == 2


def test_export_db(capsys, tmp_path):
    out_file = tmp_path / "db.json"
    assert run(capsys, "export-db", "--out", str(out_file))[0] == 0
    records = json.loads(out_file.read_text())
    assert len(records) == 10
    assert run(capsys, "fano", "2", "0", "--db-path", str(out_file))[0] == 0


def test_missing_file(capsys):
    assert run(capsys, "fano", "2", "0", "--db-path", "/nonexistent/db.json")[0] == 2


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["nef", "--db", "2", "4"])
    assert exc.value.code == 2
