import io
import json

from dblplane.cli import load_config, parse_coeffs, run


def call(*argv):
    out = io.StringIO()
    rc = run(list(argv), out=out)
    return rc, out.getvalue()


def test_lines_json():
    rc, out = call("lines", "--coeffs", "1,0;0,1;1,1")
    assert rc == 0
    js = json.loads(out)
    assert js["computed"]["Cl(T)"]["str"] == "Z/2 + Z/2"


def test_lines_text():
    rc, out = call("lines", "--coeffs", "1,0;0,1;1,1;1,-1", "--format", "text", "--d", "2,3")
    assert rc == 0
    assert "PASS chr_order" in out and "FAIL" not in out


def test_lines_rejected(capsys):
    rc, _ = call("lines", "--coeffs", "1,0;0,1")
    assert rc == 2
    assert "n > 2" in capsys.readouterr().err


def test_hyper_with_vary_roots():
    rc, out = call("hyper", "--poly", "(x-1)^2*(x-2)^4", "--trials", "2", "--vary-roots")
    assert rc == 0
    assert json.loads(out)["computed"]["root_variation"]["reversed"] is True


def test_graph_emit():
    rc, out = call("graph", "--coeffs", "1,0;0,1;1,1", "--emit", "dot")
    assert rc == 0 and out.startswith("graph arrangement")
    rc, out = call("graph", "--poly", "(x-1)^2", "--emit", "json")
    assert rc == 0 and json.loads(out)["cycle_rank"] == 1


def test_intersection():
    rc, out = call("intersection", "--n", "5")
    assert rc == 0 and json.loads(out)["abs_det"] == 16
    rc, _ = call("intersection", "--n", "4")
    assert rc == 2


def test_crossedproduct():
    rc, out = call("crossedproduct", "--poly", "(x-1)^2*(x-2)^4", "--index", "1", "--trials", "3")
    assert rc == 0
    js = json.loads(out)
    assert js["summary"]["verbatim"] == 14 and len(js["cells"]) == 16
    rc, _ = call("crossedproduct", "--poly", "(x-1)^2", "--index", "2")
    assert rc == 2


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("coeffs = 1,0;0,1;1,1;1,2;1,3\nformat = text\n")
    assert load_config(str(cfg))["coeffs"].startswith("1,0")
    rc, out = call("--config", str(cfg), "lines")
    assert rc == 0 and out.startswith("scenario:")
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    rc, _ = call("--config", str(bad), "lines")
    assert rc == 2


def test_parse_coeffs():
    assert parse_coeffs("1/2,1; 0,1") == [(0.5, 1), (0, 1)]
