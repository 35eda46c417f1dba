from __future__ import annotations

import io
import json

from equising.cli import build_parser, run

DEEP9 = "vars: x y z\ncurve: x^9 + z*(x*z^3 + y^4)^2\n"
DEFORMED9 = "vars: x y z\ncurve: x^9 + z*x^8 + z*(x*z^3 + y^4)^2\n"


def invoke(argv, files):
    parser = build_parser()
    args = parser.parse_args(argv)
    out, err = io.StringIO(), io.StringIO()
    code = run(args, out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, content):
    p = tmp_path / name
    p.write_text(content)
    return str(p)


def test_certified_exit_zero(tmp_path):
    f = write(tmp_path, "c.curve", DEFORMED9)
    code, out, err = invoke(["analyze", f, "--criteria", "4d-ea", "--seed", "1"], tmp_path)
    assert code == 0
    assert "smoothCertified" in out
    assert "dimension 23" in out


def test_undecided_exit_one(tmp_path):
    f = write(tmp_path, "c.curve", DEEP9)
    code, out, err = invoke(["analyze", f, "--criteria", "4d-ea", "--seed", "1"], tmp_path)
    assert code == 1
    assert "36 > 39  FAILS" in out


def test_parse_error_exit_two(tmp_path):
    f = write(tmp_path, "bad.curve", "vars: x y z\ncurve: x^2 + 2y\n")
    code, out, err = invoke(["analyze", f], tmp_path)
    assert code == 2
    assert "line" in err and "column" in err


def test_json_deterministic_and_round_trips(tmp_path):
    f = write(tmp_path, "c.curve", DEFORMED9)
    argv = ["analyze", f, "--criteria", "4d-ea,3d-ea", "--seed", "7", "--format", "json"]
    code1, out1, _ = invoke(argv, tmp_path)
    code2, out2, _ = invoke(argv, tmp_path)
    assert out1 == out2  # byte-identical
    obj = json.loads(out1)
    assert json.loads(json.dumps(obj, sort_keys=True, indent=2) + "\n") == obj
    assert obj["input"]["seed"] == 7
    reports = {r["criterion"]: r for r in obj["reports"]}
    assert reports["4d-ea"]["verdict"] == "smoothCertified"
    assert reports["4d-ea"]["dimension"] == 23
    for e in reports["4d-ea"]["perComponent"][0]["isodSources"]:
        assert e["exactness"] in ("exact", "lowerBound")


def test_dump_resolution(tmp_path):
    f = write(tmp_path, "c.curve", DEEP9)
    code, out, _ = invoke(
        ["analyze", f, "--criteria", "4d-ea", "--seed", "1", "--format", "json",
         "--dump-resolution"], tmp_path)
    obj = json.loads(out)
    trees = obj["resolutions"]
    assert "(0 : 0 : 1)" in trees
    nodes = trees["(0 : 0 : 1)"]["nodes"]
    assert nodes[0]["parent"] == -1
    assert nodes[0]["multiplicity"] == 2


def test_mixed_with_partition_file(tmp_path):
    f = write(tmp_path, "c.curve", DEFORMED9)
    part = write(tmp_path, "p.fix", "aux: polar\n(0 : 0 : 1): analytic\n")
    code, out, _ = invoke(
        ["analyze", f, "--criteria", "mixed", "--seed", "1", "--fix", part], tmp_path)
    assert code == 0
    assert "H^{A,T}" in out


def test_unknown_criterion_rejected(tmp_path):
    f = write(tmp_path, "c.curve", DEEP9)
    code, _, err = invoke(["analyze", f, "--criteria", "5d-ea"], tmp_path)
    assert code == 2
    assert "unknown criterion" in err


def test_surface_block(tmp_path):
    content = DEFORMED9 + "surface:\n  kc: -27\n  cc: 81\n  c2: 81\n  pa: 28\n  pa_i: 28\n"
    f = write(tmp_path, "c.curve", content)
    code, out, _ = invoke(["analyze", f, "--criteria", "surface-ea,3d-ea"], tmp_path)
    lines = [l for l in out.splitlines() if "component 0:" in l]
    assert len(lines) == 2
    assert lines[0].replace("surface", "3d") == lines[0]
    # the plane surface data reproduces the per-component criterion verbatim
    assert lines[0].split(":")[1] == lines[1].split(":")[1]


def test_extension_curve_rejected(tmp_path):
    f = write(tmp_path, "c.curve", "field: t^2 - 2\nvars: x y z\ncurve: x^2 - 2*y^2 + @*0*z^2 + z*x\n")
    code, _, err = invoke(["analyze", f], tmp_path)
    assert code == 2
    assert "extension" in err
