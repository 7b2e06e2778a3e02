import io
import json
from pathlib import Path

import jsonschema
import pytest

from abduce.cli import run

DOCS = Path(__file__).resolve().parent.parent / "docs"
EXAMPLES = DOCS / "examples"
COMMANDS = json.loads((EXAMPLES / "commands.json").read_text(encoding="utf-8"))
SCHEMAS = {
    "cube-lnr-explain-json": "verdict",
    "horn-lcr-cut-json": "cutting",
    "tableau-json": "tableau",
    "fol-example-json": "fol-verdicts",
    "mpl-verify-json": "mpl-verify",
    "dl-smurf-lcr-json": "dl-verdict",
    "dl-smurf-lnr-json": "dl-verdict",
    "dl-explain-json": "dl-verdict",
    "postulates-json": "postulates",
    "inconsistent-json": "error",
}


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def schema(name):
    return json.loads((DOCS / "schemas" / f"{name}.schema.json").read_text(encoding="utf-8"))


@pytest.fixture
def in_examples(monkeypatch):
    monkeypatch.chdir(EXAMPLES)


@pytest.mark.parametrize("cmd", COMMANDS, ids=[c["name"] for c in COMMANDS])
def test_golden_output(cmd, in_examples):
    code, out, _ = invoke(*cmd["args"])
    assert code == cmd["exit"]
    assert out == (EXAMPLES / "golden" / f"{cmd['name']}.out").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", sorted(SCHEMAS))
def test_json_output_matches_schema(name, in_examples):
    cmd = next(c for c in COMMANDS if c["name"] == name)
    _, out, _ = invoke(*cmd["args"])
    jsonschema.validate(json.loads(out), schema(SCHEMAS[name]))


def test_schemas_are_valid():
    for path in (DOCS / "schemas").glob("*.json"):
        jsonschema.Draft202012Validator.check_schema(json.loads(path.read_text(encoding="utf-8")))


def test_triptych_item_one_accepted(in_examples):
    code, out, _ = invoke("explain", "--logic", "pl", "--relation", "lcr", "--retraction", "erosion:hamming",
                          "--theory", "triptych.txt", "--obs", "c", "--candidate", "a|b")
    assert code == 0 and out.startswith("accepted: true")


def test_cube_lnr_characterization(in_examples):
    code, out, _ = invoke("characterize", "--relation", "lnr", "--theory", "cube.txt",
                          "--obs", "cube_obs.txt", "--vars", "a,b,c")
    assert code == 0
    assert out.splitlines()[0] == "a & ~b & ~c | a & b & ~c | a & ~b & c"


def test_inconsistent_input_exits_one(in_examples):
    code, out, err = invoke("explain", "--theory", "cube.txt", "--obs", "~a & ~b & ~c", "--candidate", "a")
    assert code == 1 and out == ""
    assert err == "abduce: error: T ∪ {φ} is inconsistent\n"


def test_text_and_json_verdicts_agree(in_examples):
    base = ["explain", "--relation", "lcr", "--theory", "cube.txt", "--obs", "cube_obs.txt",
            "--candidate", "a & ~b & ~c", "--vars", "a,b,c"]
    _, text, _ = invoke(*base)
    _, js, _ = invoke(*base, "--json")
    data = json.loads(js)
    assert f"accepted: {str(data['accepted']).lower()}" in text.splitlines()
    assert data["accepted"] is False


@pytest.mark.parametrize("argv", [
    ["explain", "--obs", "a &", "--candidate", "a"],
    ["explain", "--obs", "a"],
    ["frobnicate"],
    ["cut", "--theory", "missing-file.txt", "--obs", "a"],
])
def test_usage_and_parse_errors_exit_two(argv, capsys):
    code, _, _ = invoke(*argv)
    assert code == 2


@pytest.mark.parametrize("argv, message", [
    (["explain", "--logic", "mpl", "--obs", "<>p", "--candidate", "[]p"], "not implemented"),
    (["explain", "--logic", "fol", "--relation", "tableau", "--obs", "forall x. p(x,x)",
      "--candidate", "forall x. p(x,x)"], "not available"),
    (["cut", "--logic", "fol", "--obs", "p"], "pl and horn"),
    (["tableau", "--logic", "horn", "--obs", "a"], "propositional only"),
])
def test_unsupported_combination_exits_one(argv, message):
    code, _, err = invoke(*argv)
    assert code == 1 and message in err


def test_bad_argument_value_exits_two():
    code, _, err = invoke("cut", "--vars", "a,a", "--obs", "a")
    assert code == 2 and "duplicate" in err


@pytest.mark.parametrize("argv", [
    ["postulates", "--trials", "1", "--json"],
    ["dl-smurf", "--json"],
    ["verify", "--logic", "alc", "--obs", "exists r. A", "--json"],
])
def test_randomized_json_commands_need_seed(argv):
    code, out, err = invoke(*argv)
    assert code == 2
    assert "--seed" in err
    assert json.loads(out)["error"] == "UsageError"


def test_inline_formula_wins_over_file(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "a").write_text("b\n")
    code, out, _ = invoke("characterize", "--relation", "lnr", "--obs", "a", "--vars", "a,b")
    assert code == 0 and "models: {10,11}" in out


def test_broken_postulate_run_reports_violations():
    code, out, _ = invoke("postulates", "--postulate", "E-Con", "--trials", "5", "--seed", "1",
                          "--broken", "--json")
    assert code == 0
    assert json.loads(out)["reports"][0]["violations"]
