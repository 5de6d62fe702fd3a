import json
import math
import os

import pytest

from critline.cli import output
from critline.cli.config import load_config
from critline.cli.main import main
from critline.errors import ConfigError

FAST = """\
[spec]
catalog = rational-075

[run]
seed = 11

[identity]
random = 2
online = 0.5+3j

[spectrum]
T = 20
N = 8
"""

VERBS = ("check", "zeros", "compare", "identity", "spectrum")


def write(tmp_path, text, name="run.ini"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def run_all(cfg, out):
    codes = {v: main([v, "--config", cfg, "--out", out]) for v in VERBS}
    codes["report"] = main(["report", "--out", out])
    return codes


@pytest.fixture(scope="module")
def fast_runs(tmp_path_factory):
    base = tmp_path_factory.mktemp("cli")
    cfg = write(base, FAST)
    a, b = str(base / "a"), str(base / "b")
    return run_all(cfg, a), run_all(cfg, b), a, b


def test_all_verbs_pass(fast_runs):
    codes, _, out, _ = fast_runs
    assert codes == {v: 0 for v in VERBS + ("report",)}
    for f in ("check.json", "zeros.csv", "zeros.json", "phase.svg", "compare.csv",
              "identity.csv", "spectrum.csv", "convergence.csv", "pairs.csv",
              "report.json", "summary.txt"):
        assert os.path.exists(os.path.join(out, f)), f


def test_outputs_are_byte_identical(fast_runs):
    _, _, a, b = fast_runs
    names = sorted(os.listdir(a))
    assert names == sorted(os.listdir(b))
    for n in names:
        with open(os.path.join(a, n), "rb") as fa, open(os.path.join(b, n), "rb") as fb:
            assert fa.read() == fb.read(), n


def _parse(value, kind):
    if value == "":
        return None
    if kind == "float":
        return float(value)
    if kind == "int":
        return int(value)
    if kind == "bool":
        assert value in ("true", "false")
        return value == "true"
    return value


def test_csv_round_trip_against_schema(fast_runs):
    _, _, out, _ = fast_runs
    schemas = output.load_schemas()
    seen = 0
    for name, schema in schemas.items():
        if not name.endswith(".csv"):
            continue
        path = os.path.join(out, name)
        with open(path, "rb") as fh:
            raw = fh.read()
        assert raw.endswith(b"\r\n")
        header, rows = output.read_csv(path)
        assert header == [c["name"] for c in schema["columns"]]
        kinds = [c["type"] for c in schema["columns"]]
        for row in rows:
            assert len(row) == len(header)
            parsed = [_parse(v, k) for v, k in zip(row, kinds)]
            # float cells written with repr survive the trip exactly
            for v, k, p in zip(row, kinds, parsed):
                if k == "float" and p is not None and math.isfinite(p):
                    assert output.cell(p) == v
        seen += 1
    assert seen == 6


def test_csv_quoting(tmp_path):
    schemas = {"t.csv": {"columns": [{"name": "a"}, {"name": "b"}]}}
    path = str(tmp_path / "t.csv")
    output.write_csv(path, "t.csv", [{"a": 'x,"y"', "b": 1.5}], schemas)
    assert open(path, "rb").read() == b'a,b\r\n"x,""y""",1.5\r\n'
    assert output.read_csv(path) == (["a", "b"], [['x,"y"', "1.5"]])


def test_json_is_strict(fast_runs):
    _, _, out, _ = fast_runs
    with open(os.path.join(out, "report.json"), encoding="utf-8") as fh:
        doc = json.loads(fh.read(), parse_constant=lambda c: pytest.fail(f"bare {c}"))
    assert doc["status"] == "pass"
    assert set(doc["summary"]) == set(VERBS)


def test_svg_is_well_formed(fast_runs):
    import xml.etree.ElementTree as ET
    _, _, out, _ = fast_runs
    root = ET.parse(os.path.join(out, "phase.svg")).getroot()
    assert root.tag == "{http://www.w3.org/2000/svg}svg"
    assert root.get("version") == "1.1"


def test_seed_changes_identity_points(tmp_path):
    cfg = write(tmp_path, FAST)
    assert main(["identity", "--config", cfg, "--out", str(tmp_path / "x"), "--seed", "1"]) == 0
    assert main(["identity", "--config", cfg, "--out", str(tmp_path / "y"), "--seed", "2"]) == 0
    a = open(tmp_path / "x" / "identity.csv", "rb").read()
    b = open(tmp_path / "y" / "identity.csv", "rb").read()
    assert a != b


# exit codes

def test_degenerate_plus_fails(tmp_path):
    cfg = write(tmp_path, "[spec]\ncatalog = degenerate-2s-1\n")
    assert main(["check", "--config", cfg, "--out", str(tmp_path / "o")]) == 2
    doc = json.load(open(tmp_path / "o" / "check.json"))
    failed = [c["name"] for c in doc["report"]["checks"] if c["status"] == "fail"]
    assert failed == ["f_not_square_integrable"]


def test_degenerate_minus_zeros(tmp_path):
    cfg = write(tmp_path, "[spec]\ncatalog = degenerate-2s-1\n[run]\neta = minus\n")
    assert main(["zeros", "--config", cfg, "--out", str(tmp_path / "o")]) == 0
    header, rows = output.read_csv(str(tmp_path / "o" / "zeros.csv"))
    re = header.index("re_w")
    assert all(abs(float(r[re]) - 0.5) <= 1e-8 for r in rows)


def test_numerical_error_is_inconclusive(tmp_path):
    # the first height of the schedule, T/8 = 2.5, is below |Im w| for some points
    cfg = write(tmp_path, "[spec]\ncatalog = rational-075\n[quadrature]\nT = 20\n")
    assert main(["identity", "--config", cfg, "--out", str(tmp_path / "o")]) == 3
    doc = json.load(open(tmp_path / "o" / "identity.json"))
    assert doc["status"] == "inconclusive"
    assert doc["error"]["type"] == "PreconditionError"


@pytest.mark.parametrize("text", [
    "not a config",
    "[spec]\ncatalog = nope\n",
    "[spec]\ncatalog = xi2s\n[bogus]\nx = 1\n",
    "[spec]\ncatalog = xi2s\n[run]\ncolour = red\n",
    "[spec]\ncatalog = xi2s\n[window]\nrect = 0.9, 0.1, 0, 30\n",
    "[spec]\ncatalog = xi2s\n[quadrature]\nT = many\n",
    "[spec]\nvariant = rational\nzeros = 0.5+1j\n",
    "[run]\neta = plus\n",
])
def test_config_errors(tmp_path, text):
    cfg = write(tmp_path, text)
    assert main(["check", "--config", cfg, "--out", str(tmp_path / "o")]) == 64


def test_usage_errors(tmp_path):
    assert main(["frobnicate"]) == 64
    assert main(["check"]) == 64
    assert main(["check", "--config", str(tmp_path / "missing.ini")]) == 64
    assert main(["check", "--config", write(tmp_path, FAST), "--eta", "sideways"]) == 64
    empty = tmp_path / "empty"
    empty.mkdir()
    assert main(["report", "--out", str(empty)]) == 64


# config

def test_overrides():
    cfg = load_config(text=FAST, overrides={"verb": "spectrum", "T": 40, "N": 4,
                                            "eta": "plus", "window": "0, 10"})
    assert (cfg.spectrum_T, cfg.spectrum_N, int(cfg.eta)) == (40.0, 4, 1)
    assert cfg.t_window == (0.0, 10.0)
    cfg = load_config(text=FAST, overrides={"verb": "identity", "T": 800})
    assert cfg.T == 800 and cfg.T_schedule == (100.0, 200.0, 400.0, 800.0)
    with pytest.raises(ConfigError):
        load_config(text=FAST, overrides={"window": "1, 2, 3"})


def test_variant_spec():
    cfg = load_config(text="[spec]\nvariant = rational\nzeros = 0.75\nsigmas = 0.75\n"
                           "label = mine\n[run]\neta = minus\n")
    assert cfg.spec.label == "mine"
    assert cfg.spec.declared_sigmas == (0.75,)
    cfg = load_config(text="[spec]\nvariant = epstein\nform = 1, 1, 1\n")
    assert int(cfg.eta) == 1
