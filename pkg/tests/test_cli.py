import json

import pytest

from chambers.cli import Config, CliError, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("CHAMBERS_CACHE_DIR", str(tmp_path / "cache"))
    (tmp_path / "pg3.json").write_text('{"kind": "pg2", "q": 3}')
    (tmp_path / "pg2.json").write_text('{"kind": "pg2", "q": 2}')
    return tmp_path


def test_build_is_idempotent(workdir, capsys):
    code, first, err = run(capsys, "build", "--spec", "pg3.json")
    assert code == 0 and "built" in err
    doc = json.loads(first)
    assert doc["chambers"] == 52 and doc["apartments"] == 234
    code, second, err = run(capsys, "build", "--spec", "pg3.json")
    assert code == 0 and "cache hit" in err and second == first
    assert (workdir / "cache" / "apartments" / f"{doc['hash']}.npy").exists()


def test_malformed_spec_reports_location(workdir, capsys):
    (workdir / "bad.json").write_text('{"kind": "pg2",\n "q" 3}')
    code, _, err = run(capsys, "build", "--spec", "bad.json")
    assert code == 2
    info = json.loads(err)
    assert info["error"] == "parse_error" and "bad.json:2:" in info["message"]


def test_realize_then_verify_certificate(workdir, capsys):
    (workdir / "vertex.json").write_text('{"simplices": [{"cotype": [1], "rep": 0}]}')
    code, _, _ = run(capsys, "realize", "--building", "pg3.json", "--apartment", "0",
                     "--subcomplex", "vertex.json", "--report", "cert.json")
    assert code == 0
    cert = json.loads((workdir / "cert.json").read_text())
    assert cert["valid"] and cert["intersection"] == cert["target"]
    code, out, _ = run(capsys, "verify", "--suite", "certificate", "--building", "pg3.json",
                       "--certificate", "cert.json")
    assert code == 0 and json.loads(out)["passed"]
    cert["witness"] = cert["host"]
    (workdir / "forged.json").write_text(json.dumps(cert))
    code, out, _ = run(capsys, "verify", "--suite", "certificate", "--building", "pg3.json",
                       "--certificate", "forged.json")
    assert code == 1


def test_realize_refuses_thin(workdir, capsys):
    (workdir / "k.json").write_text('[]')
    code, _, err = run(capsys, "realize", "--building", "pg2.json", "--apartment", "0", "--subcomplex", "k.json")
    assert code == 2 and json.loads(err)["error"] == "thickness"


def test_verify_reports_are_byte_identical(workdir, capsys):
    for name in ("a.json", "b.json"):
        assert run(capsys, "verify", "--suite", "obstruction", "--building", "pg2.json", "--report", name)[0] == 0
    assert (workdir / "a.json").read_bytes() == (workdir / "b.json").read_bytes()


def test_verify_exit_code_on_failure(workdir, capsys):
    code, out, _ = run(capsys, "verify", "--suite", "condition-iv", "--system", "334", "--radii", "2,6")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--suite", "condition-iv", "--system", "334", "--radii", "3,8")
    assert code == 1 and json.loads(out)["failures"]


def test_scan_hyperbolic(workdir, capsys):
    code, _, err = run(capsys, "scan", "--system", "334", "--radii", "3,8", "--report", "scan.json")
    assert code == 0
    doc = json.loads((workdir / "scan.json").read_text())
    assert doc["failures"] and doc["failures"][0]["status"] == "no witness within radius"


def test_env_radii_override(workdir, capsys, monkeypatch):
    monkeypatch.setenv("CHAMBERS_RADII", "1,2")
    code, out, _ = run(capsys, "scan", "--system", "A1~")
    assert json.loads(out)["params"]["triple_radius"] == 1
    code, out, _ = run(capsys, "scan", "--system", "A1~", "--radii", "2,3")
    assert json.loads(out)["params"]["triple_radius"] == 2


def test_export_dot_apartment_has_six_nodes(workdir, capsys):
    code, out, _ = run(capsys, "export-dot", "--building", "pg2.json", "--apartment", "0")
    assert code == 0
    assert out.startswith("graph") and out.count("fillcolor=") == 6
    assert out.count(" -- ") == 6


def test_export_dot_certificate_colours(workdir, capsys):
    (workdir / "chamber.json").write_text('[{"cotype": [], "rep": 0}]')
    run(capsys, "realize", "--building", "pg3.json", "--apartment", "0", "--subcomplex", "chamber.json",
        "--report", "cert.json")
    code, out, _ = run(capsys, "export-dot", "--building", "pg3.json", "--certificate", "cert.json")
    assert "palegreen" in out and "lightblue" in out and "lightsalmon" in out


def test_hull_command(workdir, capsys):
    code, out, _ = run(capsys, "hull", "--system", "A2", "--elements", "[[], [0, 1, 0]]")
    assert code == 0 and len(json.loads(out)["hull"]) == 6
    code, _, err = run(capsys, "hull", "--system", "A2", "--elements", "[[0")
    assert code == 2


def test_config_validation():
    with pytest.raises(CliError):
        Config(jobs=0)
    with pytest.raises(CliError):
        Config(radii=(-1, 2))


def test_unknown_building(workdir, capsys):
    code, _, err = run(capsys, "build", "--spec", "nothing-here")
    assert code == 2 and json.loads(err)["error"] == "usage"


def test_bad_shorthand_is_a_usage_error(workdir, capsys):
    code, _, err = run(capsys, "build", "--spec", "pg2:x")
    assert code == 2 and json.loads(err)["error"] == "usage"


def test_hull_text_format(workdir, capsys):
    code, out, _ = run(capsys, "hull", "--system", "A2", "--elements", "[[0], [1]]", "--format", "text")
    assert code == 0 and out.split() == ["1", "s0", "s1"]
