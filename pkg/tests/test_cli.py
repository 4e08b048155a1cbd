import json
import subprocess
import sys

import pytest

from wsprime.cli import main
from wsprime.workspace import WorkspaceError, execute, parse_workspace, tokenize

EXAMPLE = """\
ring R = zn 12
mset S of R = [1,3,9]
module M of R = regular
submodule N of M = gen [6]
query classify N S
"""


def run(tmp_path, text, *flags):
    ws = tmp_path / "w.ws"
    ws.write_text(text)
    return main(["--workspace", str(ws), *flags])


def test_parse_example():
    doc = parse_workspace(EXAMPLE)
    assert [d.kind for d in doc.declarations] == ["ring", "mset", "module", "submodule"]
    assert len(doc.queries) == 1 and doc.warnings == []


def test_contains_zero_warning():
    doc = parse_workspace("ring R = zn 12\nmset S of R = [6]\n")
    assert [w["kind"] for w in doc.warnings] == ["contains_zero"]
    assert doc.warnings[0]["line"] == 2


def test_duplicate_names_report_both_lines():
    with pytest.raises(WorkspaceError) as err:
        parse_workspace("ring R = zn 12\n# comment\nring R = zn 6\n")
    assert err.value.line == 3 and "line 1" in err.value.message and "line 3" in err.value.message


@pytest.mark.parametrize("text,line,col,fragment", [
    ("ring R = zn 12\nideal I of Q = gen [2]\n", 2, 12, "unresolved"),
    ("ring R = zn 12\nmodule M of R = regular\nideal I of M = gen [2]\n", 3, 12, "type mismatch"),
    ("ring R = zn\n", 1, 12, "expected N"),
    ("ring R = zn 12 extra\n", 1, 16, "unexpected"),
    ("ring R = zn 12\nideal I of R = gen [2, 13]\n", 2, 20, "not an element"),
    ("frobnicate\n", 1, 1, "unknown statement"),
    ("ring R = zn 12\nideal I of R = gen [2\n", 2, 20, "unterminated"),
])
def test_parse_errors_have_locations(text, line, col, fragment):
    with pytest.raises(WorkspaceError) as err:
        parse_workspace(text)
    assert (err.value.line, err.value.col) == (line, col)
    assert fragment in err.value.message


def test_tokenizer_keeps_pair_labels():
    toks = tokenize("submodule N of M = gen [(1,2), [3], 4]  # trailing", 1)
    assert toks[-1].kind == "list" and toks[-1].text == ["(1,2)", "[3]", "4"]


def test_classify_report(tmp_path, capsys):
    assert run(tmp_path, EXAMPLE) == 0
    report = json.loads(capsys.readouterr().out)
    (q,) = report["queries"]
    assert q["result"]["weakly_prime"] is False and q["result"]["weakly_s_prime"] is True
    assert q["result"]["witnesses"] == [3, 9] and q["elapsed_ms"] is None
    assert q["counterexample"]["weakly_prime"] == {"r": 2, "m": 3, "r_label": "2", "m_label": "3"}
    assert q["inputs"]["N"]["host"]["ring"]["add"][1][11] == 0


def test_labels_resolve_before_indices(tmp_path, capsys):
    text = """\
ring A = zn 2
ring B = zn 3
ring P = product A B
module M of P = regular
submodule N of M = gen [(1,0)]
mset S of P = [(1,1)]
query classify N S method=char2
"""
    assert run(tmp_path, text) == 0
    q = json.loads(capsys.readouterr().out)["queries"][0]
    assert q["inputs"]["N"]["labels"] == ["(0,0)", "(1,0)"]


def test_constructions_in_workspace(tmp_path, capsys):
    text = """\
ring R = zn 12
ring Q = zn 6
ideal J of R = gen [2]
ideal K of Q = gen [2]
ring D = duplication R J
module DM of D = carrier
hom f = R -> Q natural
module MR of R = regular
module MQ of Q = regular
modhom phi = MR -> MQ natural
ring A = amalgamation f K phi
module AM of A = carrier
ring I = idealization Q MQ
ideal Z of R = gen [4]
ring RZ = quotient R Z
submodule N of DM = gen [1]
mset S of D = [1]
query classify N S
"""
    assert run(tmp_path, text) == 0
    report = json.loads(capsys.readouterr().out)
    orders = {d["name"]: d.get("order") for d in report["declarations"]}
    assert orders["D"] == 72 and orders["DM"] == 72 and orders["A"] == 36 and orders["RZ"] == 4
    assert orders["I"] == 36


def test_unresolved_name_exit_2(tmp_path, capsys):
    assert run(tmp_path, "ring R = zn 12\nsubmodule N of M = gen [6]\n") == 2
    err = capsys.readouterr().err
    assert ":2:16: error: unresolved name 'M'" in err


def test_usage_errors_exit_2(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    assert main(["--workspace", str(tmp_path / "missing.ws")]) == 2
    assert run(tmp_path, EXAMPLE, "--jobs", "0") == 2


def test_runtime_error_is_a_query_record(tmp_path, capsys):
    text = EXAMPLE + "submodule W of M = gen [1]\nquery classify W S\nquery classify N S\n"
    code = run(tmp_path, text)
    report = json.loads(capsys.readouterr().out)
    errs = [q["error"] for q in report["queries"]]
    assert errs[0] is None and errs[1]["type"] == "ImproperSubmodule" and errs[2] is None
    assert code == 1


def test_counterexample_exit_1(tmp_path, capsys, monkeypatch):
    from wsprime.harness import suite

    suite.coverage_lock()
    original = suite._CHECKS["T3"]

    def broken(corpus, tally):
        tally.check(False, {"planted": True})

    monkeypatch.setitem(suite._CHECKS, "T3", broken)
    text = "corpus C = max_ring 4 max_module 4 kinds [cyclic] seed 0\nquery theorems [T3] corpus C\n"
    assert run(tmp_path, text) == 1
    q = json.loads(capsys.readouterr().out)["queries"][0]
    assert q["counterexample"] == {"theorem_id": "T3", "instance": {"planted": True}}
    monkeypatch.setitem(suite._CHECKS, "T3", original)
    assert run(tmp_path, text) == 0


def test_theorem_query_record(tmp_path, capsys):
    text = "query theorems [T1,T19] corpus default\n"
    assert run(tmp_path, text, "--max-ring", "6", "--max-module", "6") == 0
    q = json.loads(capsys.readouterr().out)["queries"][0]
    recs = q["result"]["results"]
    assert [r["theorem_id"] for r in recs] == ["T1", "T19"]
    assert all(r["counterexamples"] == [] for r in recs)


def test_search_query(tmp_path, capsys):
    text = "query search weakly_s_prime_not_s_prime max_ring=6 max_module=6\n"
    assert run(tmp_path, text) == 0
    inst = json.loads(capsys.readouterr().out)["queries"][0]["result"]["instance"]
    assert (inst["ring"], inst["N"], inst["S"]) == ("Z_4", ["0"], ["1"])


def test_out_and_emit_match(tmp_path, capsys):
    emitted = tmp_path / "emit.json"
    out = tmp_path / "out.json"
    assert run(tmp_path, EXAMPLE + f"emit json {emitted}\n", "--out", str(out)) == 0
    assert capsys.readouterr().out == ""
    assert emitted.read_bytes() == out.read_bytes()


def test_timings_flag(tmp_path, capsys):
    assert run(tmp_path, EXAMPLE, "--timings") == 0
    q = json.loads(capsys.readouterr().out)["queries"][0]
    assert isinstance(q["elapsed_ms"], float)


def test_execute_is_deterministic():
    doc = parse_workspace(EXAMPLE)
    assert execute(doc)[0] == execute(doc)[0]


def test_console_script_module_entry(tmp_path):
    ws = tmp_path / "w.ws"
    ws.write_text(EXAMPLE)
    proc = subprocess.run([sys.executable, "-m", "wsprime.cli", "--workspace", str(ws)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["version"] == 1
