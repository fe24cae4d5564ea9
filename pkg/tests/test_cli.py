import json
import subprocess
import sys

import pytest

from torusdiff.certificate import reverify
from torusdiff.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_rdf_levels(capsys):
    code, out, _ = run(capsys, "rdf-levels", "--n", "10")
    assert code == 0
    assert json.loads(out) == "(3,3,3,1)"


def test_rdf_levels_table(capsys):
    assert run(capsys, "rdf-levels", "--n", "10", "--format", "table")[1].strip() == "(3,3,3,1)"


def test_lemma31(capsys):
    code, out, _ = run(capsys, "lemma31", "--n", "2")
    data = json.loads(out)
    assert code == 0 and data["verdict"] is True
    assert data["computed"]["ratio"] == "0/1"
    assert reverify(data)


def test_bad_flag_value_names_flag(capsys):
    code, _, err = run(capsys, "prop31", "--n", "two")
    assert code == 1 and "--n" in err


def test_unknown_subcommand(capsys):
    assert run(capsys, "nope")[0] == 1


def test_precondition_is_usage_error(capsys):
    code, _, err = run(capsys, "prop31", "--n", "2", "--epsilon", "1/4")
    assert code == 1 and "epsilon" in err


def test_false_verdict_exit_code(capsys):
    code, out, _ = run(
        capsys, "delta-check", "--family", "g-basis", "--max-generation", "3", "--f-cell", "3", "--lambda", "1/3", "--k", "5"
    )
    assert code == 2 and json.loads(out)["verdict"] is False


def test_delta_check_true(capsys):
    code, _, _ = run(
        capsys, "delta-check", "--family", "g-basis", "--max-generation", "3", "--f-cell", "3", "--lambda", "1/3", "--k", "1"
    )
    assert code == 0


def test_decimal_epsilon_is_exact(capsys):
    code, out, _ = run(capsys, "prop31", "--n", "2", "--epsilon", "0.03125")
    assert code == 0 and json.loads(out)["params"]["epsilon"] == "1/32"


def test_input_file(tmp_path, capsys):
    query = {
        "family": "rdf-restricted",
        "max_generation": 1,
        "f": [{"coef": "1/1", "support": {"1": [["0/1", "1/2"]]}}],
        "point": {"1": "1/4"},
        "lambda": "1/2",
    }
    path = tmp_path / "q.json"
    path.write_text(json.dumps(query))
    assert json.loads(run(capsys, "maximal", "--input", str(path))[1])["value"] == "1/1"
    sup = json.loads(run(capsys, "superlevel", "--input", str(path))[1])
    assert sup["measure"] == "1/2"
    assert json.loads(run(capsys, "weak-type", "--input", str(path))[1])["ratio"] == "1/2"


def test_witness_flags(capsys):
    code, out, _ = run(capsys, "witness", "--f-cell", "1", "--shape-cell", "1", "--point", "1=1/4")
    assert code == 0 and json.loads(out)["average"] == "1/1"
    code, out, _ = run(capsys, "witness", "--f-cell", "1", "--shape-cell", "2", "--point", "1=3/4")
    assert code == 2 and json.loads(out)["in_closure"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["rdf-cell", "--n", "3"],
        ["rdf-group", "--n", "3"],
        ["family", "--family", "d-basis", "--max-generation", "2"],
        ["profile", "--family", "g-basis", "--max-generation", "2"],
        ["prop32", "--n", "2"],
        ["prop32-assemble", "--n", "2"],
        ["lemma32", "--n", "3", "--seed", "4"],
        ["lemma32", "--n", "2", "--alphas", "1/4,1/4,1/4,1/4", "--x", "1/8,1/8,1/8,9/32"],
        ["lemma33", "--K", "1", "--L", "1"],
        ["prop41", "--n", "4"],
        ["prop42", "--k", "2"],
        ["prop31", "--n", "2", "--sample-point", "1=1/2,2=1/2"],
    ],
)
def test_subcommands_succeed(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    json.loads(out)


def test_output_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["theorem31", "--stages", "1", "--output", str(a)]) == 0
    assert main(["theorem31", "--stages", "1", "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert reverify(json.loads(a.read_text()))


def test_suite_sequential_and_parallel(capsys):
    code, out, _ = run(capsys, "suite", "--max-n", "2")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] and all(reverify(c) for c in data["certificates"])
    code, out_par, _ = run(capsys, "suite", "--max-n", "2", "--parallel")
    assert code == 0 and out_par == out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torusdiff", "rdf-levels", "--n", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == "(2,1)"
