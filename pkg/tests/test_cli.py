import json
import subprocess
import sys

import pytest
from conftest import DATA

from symcut.cli import EXIT_FALSE, EXIT_INPUT, EXIT_OK, check_polyhedron, main
from symcut.serialize import load_json_file, parse_polyhedron

CORPUS = sorted((DATA / "corpus").glob("*.json"))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, obj, name="in.json"):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return path


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_check_matches_hand_derived_expectations(capsys, corpus_expected, path):
    code, out, _ = run(capsys, "check", path)
    got = json.loads(out)
    expected = corpus_expected[path.stem]["expected"]
    assert {k: got[k] for k in expected} == expected
    assert code == (EXIT_OK if all(expected.values()) else EXIT_FALSE)


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_check_output_matches_library(capsys, path):
    _, out, _ = run(capsys, "check", path)
    doc = load_json_file(str(path))
    if "polyhedron" in doc:
        P = parse_polyhedron(doc["polyhedron"])
        K = parse_polyhedron(doc["kirwan"], P.root_datum)
    else:
        P, K = parse_polyhedron(doc), None
    lib = json.loads(json.dumps(check_polyhedron(P, K), default=bool))
    assert json.loads(out) == lib


def test_check_reports_certificates(capsys):
    code, out, _ = run(capsys, "check", DATA / "corpus" / "a2_band_skew.json")
    assert code == EXIT_FALSE
    cert = json.loads(out)["certificates"]["universal"]
    assert set(cert) >= {"face", "sigma"}


def test_malformed_json_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "check", write(tmp_path, '{"facets": [1, 2'))
    assert code == EXIT_INPUT and "line 1" in err


@pytest.mark.parametrize(
    "doc",
    [
        {"root_datum": "A2", "facets": [{"beta": [1, 0], "xi": 0.5}]},
        {"root_datum": "A2", "facets": [{"beta": [1, 0], "xi": "1", "colour": "red"}]},
        {"root_datum": "E9", "facets": [{"beta": [1], "xi": "1"}]},
        {"root_datum": "A2", "facets": [{"beta": [1, 0], "xi": "1"}, {"beta": [-1, 0], "xi": "-2"}]},
        {"root_datum": "A2", "facets": [{"beta": [2, 0], "xi": "1", "label": 1}]},
    ],
    ids=["float", "unknown-key", "bad-type", "empty-set", "label-mismatch"],
)
def test_bad_inputs_exit_2(capsys, tmp_path, doc):
    code, out, err = run(capsys, "check", write(tmp_path, doc))
    assert code == EXIT_INPUT and out == "" and err.startswith("error:")


def test_missing_file_exits_2(capsys, tmp_path):
    assert run(capsys, "check", tmp_path / "nope.json")[0] == EXIT_INPUT


def test_unknown_command_exits_2(capsys):
    assert run(capsys, "frobnicate")[0] == EXIT_INPUT


def test_cut_truncates_the_kirwan_triangle(capsys):
    code, out, _ = run(capsys, "cut", DATA / "corpus" / "a2_cut_admissible.json")
    res = json.loads(out)
    assert code == EXIT_OK and res["admissible"] and not res["empty"]
    assert len(res["facets"]) == 4


def test_cut_disjoint_is_empty(capsys, tmp_path):
    doc = {
        "kirwan": {"root_datum": "A2", "facets": [[[1, 0], "1"], [[0, 1], "1"]]},
        "polyhedron": {"root_datum": "A2", "facets": [[[-1, -1], "-10"]]},
    }
    code, out, _ = run(capsys, "cut", write(tmp_path, doc))
    assert code == EXIT_OK and json.loads(out)["empty"] is True


def test_cut_inadmissible_exits_1(capsys):
    code, out, _ = run(capsys, "cut", DATA / "corpus" / "a2_cut_inadmissible.json")
    assert code == EXIT_FALSE and json.loads(out)["admissible"] is False


def test_extend_and_fan(capsys):
    code, out, _ = run(capsys, "extend", DATA / "corpus" / "a2_triangle_dominant.json")
    assert code == EXIT_OK and json.loads(out)["ambient"] == "full"
    code, out, _ = run(capsys, "extend", DATA / "corpus" / "a2_band.json")
    assert code == EXIT_FALSE and json.loads(out)["outward_positive"] is False
    code, out, _ = run(capsys, "fan", DATA / "corpus" / "a2_triangle_dominant.json")
    assert code == EXIT_OK and len(json.loads(out)["rays"]) == 2


def test_delzant_command(capsys, tmp_path):
    code, out, _ = run(capsys, "delzant", write(tmp_path, {"betas": [[1, 0], [0, 1], [-1, -1]], "xi": [1, 1, 0]}))
    res = json.loads(out)
    assert code == EXIT_OK and res["kernel_basis"] == [[1, 1, 1]] and res["exact_on_right"]
    assert len(res["moment_image"]["facets"]) == 3
    code, out, _ = run(capsys, "delzant", write(tmp_path, {"betas": [[1, 0]]}))
    assert code == EXIT_FALSE


def test_cone_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "vinberg-cone", write(tmp_path, {"root_datum": "A1"}))
    res = json.loads(out)
    assert sorted(res["hilbert_basis"]) == [[0, 2], [1, 1]]
    code, out, _ = run(capsys, "extended-cone", write(tmp_path, {"root_datum": "A1", "betas": [[1]]}))
    assert code == EXIT_OK and sorted(json.loads(out)["v_rep"]) == [[0, 1], [1, 1]]
    code, out, _ = run(capsys, "vinberg-cone", write(tmp_path, {"root_datum": "A3"}))
    assert code == EXIT_OK and "hilbert_basis" not in json.loads(out)


def test_strata_command(capsys, tmp_path):
    code, out, _ = run(capsys, "strata", "--n", 3, "--eps", "1/2")
    res = json.loads(out)
    assert code == EXIT_OK and res["pairwise_disjoint"] and res["union_is_closure"]
    assert len(res["strata"]) == 4 and res["eps"] == "1/2"
    code, _, _ = run(capsys, "strata", write(tmp_path, {"n": 0}))
    assert code == EXIT_INPUT


def test_is_delzant_command(capsys, tmp_path):
    code, out, _ = run(capsys, "is-delzant", write(tmp_path, {"vertices": [[0, 0], [1, 0], [0, 1]]}))
    assert code == EXIT_OK and json.loads(out) == {"delzant": True}
    code, _, _ = run(capsys, "is-delzant", write(tmp_path, {"vertices": [[0, 0], [2, 0], [0, 1]]}))
    assert code == EXIT_FALSE
    code, _, _ = run(capsys, "is-delzant", DATA / "corpus" / "a2_wedge.json")
    assert code == EXIT_INPUT  # unbounded


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "kahler", "--trials", 5, "--seed", 3)
    res = json.loads(out)
    assert code == EXIT_OK and res["seed"] == 3 and res["reports"][0]["trials"] == 5


def test_verify_lagrangian_example(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lagrangian", "--n", 2, "--trials", 100, "--seed", 1)
    assert code == EXIT_OK and json.loads(out)["reports"][0]["n"] == 2


def test_verify_tolerance_override_turns_red(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "moment_section", "--trials", 3, "--tol", "moment_section=0")
    assert code == EXIT_FALSE and json.loads(out)["pass"] is False


def test_verify_rejects_bad_options(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == EXIT_INPUT
    assert run(capsys, "verify", "--tol", "nope=1")[0] == EXIT_INPUT
    assert run(capsys, "verify", "--tol", "kahler")[0] == EXIT_INPUT
    assert run(capsys, "verify", "--seed", -1)[0] == EXIT_INPUT


def test_tolerance_file_and_environment(capsys, tmp_path, monkeypatch):
    tol = write(tmp_path, {"kahler": 0.0}, "tol.json")
    args = ("verify", "--suite", "kahler", "--trials", 3)
    code, out, _ = run(capsys, *args, "--tolerance-file", tol)
    assert json.loads(out)["reports"][0]["checks"]["kahler"]["tolerance"] == 0.0
    monkeypatch.setenv("SYMCUT_TOLERANCES", str(tol))
    code, out, _ = run(capsys, *args)
    assert json.loads(out)["reports"][0]["checks"]["kahler"]["tolerance"] == 0.0
    # command-line --tol wins over the environment
    code, out, _ = run(capsys, *args, "--tol", "kahler=1")
    assert code == EXIT_OK
    monkeypatch.setenv("SYMCUT_TOLERANCES", str(write(tmp_path, {"bogus": 1}, "bad.json")))
    assert run(capsys, *args)[0] == EXIT_INPUT


def test_config_file(capsys, tmp_path):
    cfg = write(tmp_path, {"suite": "kahler", "trials": 2}, "cfg.json")
    code, out, _ = run(capsys, "verify", "--config", cfg)
    assert code == EXIT_OK and json.loads(out)["reports"][0]["trials"] == 2
    bad = write(tmp_path, {"suit": "kahler"}, "bad.json")
    assert run(capsys, "verify", "--config", bad)[0] == EXIT_INPUT


def test_plot_writes_svg(capsys, tmp_path):
    target = tmp_path / "p.svg"
    code, _, _ = run(capsys, "plot", DATA / "corpus" / "a2_triangle_dominant.json", "-o", target)
    assert code == EXIT_OK and target.read_text().startswith("<svg")
    assert run(capsys, "plot", DATA / "corpus" / "a1_interval.json")[0] == EXIT_INPUT


def test_stdin_input(monkeypatch, capsys):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO((DATA / "corpus" / "a1_interval.json").read_text()))
    code, out, _ = run(capsys, "check", "-")
    assert code == EXIT_OK and json.loads(out)["universal"] is True


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "symcut", "check", str(DATA / "corpus" / "a1_interval.json")],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["simple"] is True
