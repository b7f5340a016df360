import csv
import io
import json
import subprocess
import sys

import pytest

from symcap import buildings as bd
from symcap.cli import run

E12 = {"n": 2, "shape": {"kind": "ellipsoid", "a": ["1", "2"]}}


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def e12(tmp_json):
    return tmp_json(E12, "e12.json")


def test_capacity_prints_exact_value(e12):
    code, out, _ = call("capacity", e12, "--kind", "cgh", "--k", "3")
    assert code == 0
    assert out.splitlines()[0] == "cgh_3(E(1, 2)) = 2"


def test_capacity_json_schema(e12):
    code, out, _ = call("capacity", e12, "--kind", "gtilde", "--k", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["lower"] == data["upper"] == "2" and data["exact"]


def test_chain_table_ends_with_lagrangian_capacity(e12):
    code, out, _ = call("chain", e12, "--k-max", "3")
    assert code == 0
    assert out.rstrip().splitlines()[-1] == "c_L = 2/3 (attained k=3)"


def test_constants_report():
    code, out, _ = call("constants", "--a", "1", "--eps", "1/10", "--k", "5")
    assert code == 0
    lines = out.splitlines()
    assert "s = 3" in lines and "delta = 1/3" in lines and "ell0 = 3" in lines
    assert lines[-1].endswith("HOLDS (equality)")


def test_spectrum_formats_carry_same_numbers(e12):
    _, table, _ = call("spectrum", e12, "--max-action", "3")
    _, text, _ = call("spectrum", e12, "--max-action", "3", "--format", "csv")
    _, js, _ = call("spectrum", e12, "--max-action", "3", "--format", "json")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["axis", "multiplicity", "action", "cz", "degenerate", "good"]
    assert rows == json.loads(js)
    table_rows = [line.split() for line in table.splitlines()[2:]]
    assert table_rows == [list(r.values()) for r in rows]
    assert [r["action"] for r in rows] == ["1", "2", "2", "3"]


def test_lch_report(tmp_json):
    path = tmp_json({"n": 3, "shape": {"kind": "ellipsoid", "a": ["1", "5/2", "7/2"]}})
    code, out, _ = call("lch", path, "--action-cap", "2", "--k", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert list(data["generators"]) == ["4", "6"]
    assert data["certificate"]["differential_zero"]
    assert data["augmentation"]["curve_count"] == 1 and data["augmentation"]["g_k"] == "2"
    code, out, _ = call("lch", path, "--action-cap", "2", "--k", "2")
    assert code == 0 and "g_2 = 2" in out


def test_index_report(tmp_json):
    path = tmp_json({"n": 3, "genus": 0, "cz_pos": [6], "cz_neg": [], "c1_tau": 0, "even_punctures": 0, "tangency_k": 2})
    code, out, _ = call("index", path, "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["virtual_dim"] == 0 and data["fredholm_index"] == 9


def test_index_odd_rank_one_data_reported_not_crashed(tmp_json):
    path = tmp_json({"n": 1, "cz_pos": [0]})
    code, out, _ = call("index", path)
    assert code == 0 and "transversality: n/a" in out


def test_building_validate(tmp_json):
    good = tmp_json(bd.to_json(bd.proof_figure_building()), "fig.json")
    code, out, _ = call("building", "validate", good)
    assert code == 0 and out.rstrip().endswith("VALID")
    bad = bd.to_json(bd.proof_figure_building())
    bad["levels"][0]["components"][0]["energy"] = "2"
    code, out, _ = call("building", "validate", tmp_json(bad, "bad.json"), "--format", "json")
    assert code == 2 and [v["code"] for v in json.loads(out)["violations"]] == ["ENERGY_ID"]


@pytest.mark.parametrize(
    "argv",
    [
        ["capacity", "{path}", "--kind", "cgh", "--k", "0"],
        ["capacity", "{path}", "--kind", "ech", "--k", "1"],
        ["capacity", "{path}", "--kind", "cgh"],
        ["spectrum", "{path}"],
        ["spectrum", "{path}", "--max-action", "1.5"],
        ["constants", "--a", "0", "--eps", "1", "--k", "1"],
        ["chain", "/nonexistent.json", "--k-max", "2"],
        [],
    ],
)
def test_input_errors_exit_1(argv, e12):
    argv = [a.replace("{path}", e12) for a in argv]
    code, _, _ = call(*argv)
    assert code == 1


@pytest.mark.parametrize(
    "text",
    [
        '{"n": 2, "shape": {"kind": "ellipsoid", "a": [1, ',
        '{"n": 2 "shape": {}}',
        "",
        '[1, 2',
    ],
)
def test_malformed_json_reports_position(tmp_json, text):
    code, _, err = call("chain", tmp_json(text), "--k-max", "2")
    assert code == 1 and "line" in err and "column" in err


@pytest.mark.parametrize(
    "obj",
    [
        {"n": 2, "shape": {"kind": "ellipsoid", "a": [0, 1]}},
        {"n": 2, "shape": {"kind": "blob"}},
        {"n": 2},
        [1, 2],
        {"n": 2, "shape": {"kind": "ball", "a": 0.5}},
    ],
)
def test_invalid_domains_exit_1(tmp_json, obj):
    code, _, err = call("capacity", tmp_json(obj), "--kind", "cL")
    assert code == 1 and err.startswith("error:")


def test_spectrum_needs_ellipsoid(tmp_json):
    code, _, _ = call("spectrum", tmp_json({"n": 2, "shape": {"kind": "polydisk", "a": 1}}), "--max-count", "3")
    assert code == 1


def test_output_is_deterministic(e12):
    runs = {call("chain", e12, "--k-max", "6", "--format", fmt)[1] for fmt in ("json",) * 3}
    assert len(runs) == 1


def test_module_entry_point(e12):
    proc = subprocess.run(
        [sys.executable, "-m", "symcap", "capacity", e12, "--kind", "cL"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "= 2/3" in proc.stdout
