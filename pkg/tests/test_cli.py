import json

import pytest

from toric_nccr.cli import main


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "square": write(tmp_path / "sq.json", {"ambient_dim": 2, "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]}),
        "triangle": write(tmp_path / "tri.json", {"ambient_dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]}),
        "reflexive": write(tmp_path / "rt.json", {"ambient_dim": 2, "vertices": [[1, 0], [0, 1], [-1, -1]]}),
        "duplicate": write(tmp_path / "dup.json", {"ambient_dim": 2, "vertices": [[0, 0], [1, 0], [0, 0]]}),
        "p2": write(
            tmp_path / "p2.json",
            {"ambient_dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [0, 2]]},
        ),
        "partial": write(
            tmp_path / "partial.json",
            {"ambient_dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2]]},
        ),
        "dir": tmp_path,
    }


def test_info(files, capsys):
    assert main(["info", files["square"]]) == 0
    out = capsys.readouterr().out
    assert "gorenstein witness: (0, 0, 1)" in out
    assert main(["info", files["reflexive"]]) == 0
    assert "reflexive: yes" in capsys.readouterr().out
    assert main(["info", files["duplicate"]]) == 4


def test_cohomology(files, capsys):
    assert main(["cohomology", files["p2"], "--divisor", "2,0,0"]) == 0
    assert capsys.readouterr().out.strip() == "6 0 0"
    assert main(["cohomology", files["p2"], "--divisor=-1,-1,-1"]) == 0
    assert capsys.readouterr().out.strip() == "0 0 1"
    assert main(["cohomology", files["partial"], "--divisor", "0,0,0"]) == 2
    assert main(["cohomology", files["p2"], "--divisor", "1,2"]) == 4


def test_certify_and_verify(files, capsys):
    out = str(files["dir"] / "cert.json")
    assert main(["certify", files["square"], "--out", out]) == 0
    data = json.loads(open(out).read())
    assert all(data["verdicts"].values())
    assert main(["verify", out]) == 0

    data["collection"][0]["free"][0] += 1
    tampered = write(files["dir"] / "bad.json", data)
    assert main(["verify", tampered]) == 2

    trunc = files["dir"] / "trunc.json"
    trunc.write_text(open(out).read()[:150])
    assert main(["verify", str(trunc)]) == 4


def test_certify_exit_codes(files):
    assert main(["certify", files["triangle"]]) == 4
    assert main(["certify", files["square"], "--k0-cap", "0", "--out", str(files["dir"] / "x.json")]) == 3
    assert main(["certify", files["square"], "--rejection-cap", "0"]) == 4
    assert main(["certify", str(files["dir"] / "missing.json")]) == 4
    assert main(["bogus"]) == 4


def test_seed_from_environment(files, monkeypatch):
    monkeypatch.setenv("NCCR_SEED", "7")
    out = files["dir"] / "seeded.json"
    assert main(["certify", files["square"], "--out", str(out)]) == 0
    assert json.loads(out.read_text())["seed"] == 7
