import io
import json
import os
import xml.etree.ElementTree as ET
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from raybracket.cli import OUTPUT_DIR_ENV, run

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
MINI_CORPUS = str(HERE / "fixtures" / "mini_corpus.txt")
# set to rewrite the golden files from the current implementation
REGEN = os.environ.get("RAYBRACKET_REGEN_GOLDEN") == "1"

# name -> (argv, expected exit code)
CASES = {
    "trace.json": (["trace", "--matrix", "1,2,0,1", "--ray", "1,0.5"], 0),
    "trace.csv": (["trace", "--matrix", "2,0.5,-2,1", "--ray", "1,0.5", "--format", "csv"], 0),
    "image.json": (["image", "--box", "1,0.5,0,1", "--S", "4", "--x", "1"], 0),
    "image_at_infinity.json": (["image", "--box", "1,0.5,0,1", "--S", "2"], 1),
    "brackets_distance_height.json": (["brackets", "--box", "1,0.5,0,1", "--S", "4", "--x", "1"], 0),
    "brackets_height_angle.csv": (
        ["brackets", "--matrix", "1,2,0,1", "--ray", "1,0.5", "--format", "csv"],
        0,
    ),
    "quads_height_angle.json": (["quads", "--matrix", "1,2,0,1", "--ray", "0,0"], 0),
    "quads_distance_height.svg": (
        ["quads", "--box", "1,0.5,0,1", "--S", "4", "--x", "1", "--dS", "0.5", "--dx", "0.5", "--format", "svg"],
        0,
    ),
    "sweep.csv": (
        ["sweep", "--box", "1,0.5,0,1", "--S", "4", "--x", "1", "--param", "S", "--start", "0", "--stop", "4", "--count", "5"],
        0,
    ),
    "eval.txt": (["eval", "i i"], 0),
    "eval.json": (["eval", "a e1 + (e1 e2)'", "--var", "a=2", "--format", "json"], 0),
    "corpus.txt": (["corpus", MINI_CORPUS, "--trials", "20"], 0),
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = run(argv)
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    argv, expected_code = CASES[name]
    code, out, _ = invoke(argv)
    assert code == expected_code
    path = GOLDEN / name
    if REGEN:
        path.write_text(out)
    assert out.encode() == path.read_bytes()


@pytest.mark.parametrize("name", sorted(CASES))
def test_output_is_deterministic(name):
    argv, _ = CASES[name]
    assert invoke(argv)[1] == invoke(argv)[1]


def test_trace_values():
    assert json.loads((GOLDEN / "trace.json").read_text()) == {"x": 2, "n_alpha": 0.5}


def test_image_values():
    d = json.loads((GOLDEN / "image.json").read_text())
    assert (d["S_prime"], d["x_prime"], d["m_x"]) == (4, -1, -1)


def test_error_object():
    d = json.loads((GOLDEN / "image_at_infinity.json").read_text())
    assert d["error"] == "ImageAtInfinity"
    assert d["context"]["S"] == 2


def test_brackets_values():
    d = json.loads((GOLDEN / "brackets_distance_height.json").read_text())
    assert d["commutator_analytic"] == 1
    assert d["anticommutator_analytic"] == -0.5
    assert abs(d["anticommutator_numeric"] + 0.5) < 1e-6


def test_svg_has_two_polygons():
    root = ET.fromstring((GOLDEN / "quads_distance_height.svg").read_bytes())
    ns = {"svg": "http://www.w3.org/2000/svg"}
    polygons = root.findall(".//svg:polygon", ns)
    assert sorted(p.get("id") for p in polygons) == ["image", "object"]


def test_sweep_skips_singular_row():
    code, out, err = invoke(CASES["sweep.csv"][0])
    lines = out.splitlines()
    assert lines[0].startswith("S,x,M11")
    assert len(lines) == 1 + 4  # S = 2 puts the image at infinity
    assert "skipped 1 of 5" in err


def test_usage_errors_exit_2():
    assert invoke(["trace", "--matrix", "1,2,0"])[0] == 2
    assert invoke(["trace", "--ray", "1,0"])[0] == 2
    assert invoke(["brackets", "--matrix", "1,0,0,1", "--box", "1,0,0,1"])[0] == 2
    assert invoke(["quads", "--matrix", "1,0,0,1", "--format", "csv"])[0] == 2
    assert invoke(["corpus", str(HERE / "no-such-file.txt")])[0] == 2
    assert invoke([])[0] == 2


def test_domain_error_exit_1():
    code, out, _ = invoke(["trace", "--matrix", "1,1,1,1", "--ray", "0,0"])
    assert code == 1
    assert json.loads(out)["error"] == "DeterminantViolation"
    code, out, _ = invoke(["eval", "e1 ^"])
    assert code == 1
    assert json.loads(out)["context"]["position"] == 5


def test_failing_corpus_exits_1(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("@vectors a b\na ^ b == b ^ a\n")
    code, out, _ = invoke(["corpus", str(bad)])
    assert code == 1
    assert "0/1 identities passed" in out


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# trace setup\nmatrix = 1,2,0,1\nray = 1,0.5\n")
    code, out, _ = invoke(["trace", "--config", str(cfg)])
    assert code == 0 and json.loads(out) == {"x": 2, "n_alpha": 0.5}
    code, out, _ = invoke(["trace", "--config", str(cfg), "--ray", "0,1"])
    assert json.loads(out) == {"x": 2, "n_alpha": 1}


def test_config_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("wavelength = 500\n")
    assert invoke(["trace", "--config", str(cfg)])[0] == 2


def test_config_appends_vars(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("var = a=2\nvar = b=3\n")
    code, out, _ = invoke(["eval", "a b", "--config", str(cfg)])
    assert out == "6\n"


def test_object_distance_from_s_and_n():
    code, out, _ = invoke(["image", "--box", "1,0.5,0,1", "--s", "6", "--n", "1.5"])
    assert json.loads(out)["S"] == 4


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    code, out, _ = invoke(["eval", "e1 e1", "--output", "sub/result.txt"])
    assert code == 0 and out == ""
    assert (tmp_path / "sub" / "result.txt").read_text() == "1\n"
